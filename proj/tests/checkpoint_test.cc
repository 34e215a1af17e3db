// Copyright 2026 The newsrec Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "newsrec/checkpoint.h"

#include <filesystem>

#include <gtest/gtest.h>

#include "newsrec/errors.h"
#include "test_support.h"

namespace newsrec {
namespace {

ModelConfig Small() {
  ModelConfig c;
  c.input_dim = 6;
  c.dim = 4;
  c.att_dim = 3;
  c.scoring.variant = ScoringVariant::kBilinear;
  return c;
}

TEST(CheckpointTest, RoundTripIsBitExact) {
  testing::TempDir dir;
  ModelParams p = InitModel(Small());
  SaveCheckpoint(dir / "ck.bin", p, 0xfeedULL);
  ModelParams q = ZeroModel(Small());
  EXPECT_EQ(LoadCheckpoint(dir / "ck.bin", q), 0xfeedULL);
  EXPECT_EQ(p.Flatten(), q.Flatten());

  SaveCheckpoint(dir / "ck2.bin", q, 0xfeedULL);
  EXPECT_EQ(testing::ReadFile(dir / "ck.bin"), testing::ReadFile(dir / "ck2.bin"));
}

TEST(CheckpointTest, ShapeMismatchIsRejected) {
  testing::TempDir dir;
  ModelParams p = InitModel(Small());
  SaveCheckpoint(dir / "ck.bin", p, 1);
  ModelConfig other = Small();
  other.scoring.variant = ScoringVariant::kInner;
  ModelParams q = ZeroModel(other);
  EXPECT_THROW(LoadCheckpoint(dir / "ck.bin", q), DimensionError);
  other = Small();
  other.dim = 5;
  ModelParams r = ZeroModel(other);
  EXPECT_THROW(LoadCheckpoint(dir / "ck.bin", r), DimensionError);
}

TEST(CheckpointTest, DamagedFilesAreRejected) {
  testing::TempDir dir;
  ModelParams p = InitModel(Small());
  SaveCheckpoint(dir / "ck.bin", p, 1);
  const std::string bytes = testing::ReadFile(dir / "ck.bin");
  ModelParams q = ZeroModel(Small());

  testing::WriteFile(dir / "magic.bin", "XCKP" + bytes.substr(4));
  EXPECT_THROW(LoadCheckpoint(dir / "magic.bin", q), FormatError);
  testing::WriteFile(dir / "short.bin", bytes.substr(0, bytes.size() - 3));
  EXPECT_THROW(LoadCheckpoint(dir / "short.bin", q), CorruptionError);
  testing::WriteFile(dir / "long.bin", bytes + "x");
  EXPECT_THROW(LoadCheckpoint(dir / "long.bin", q), CorruptionError);
  EXPECT_THROW(LoadCheckpoint(dir / "missing.bin", q), Error);
}

}  // namespace
}  // namespace newsrec

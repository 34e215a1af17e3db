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

#include "newsrec/model.h"

#include <gtest/gtest.h>

#include "newsrec/errors.h"
#include "test_support.h"

namespace newsrec {
namespace {

ModelConfig Base(ScoringVariant v = ScoringVariant::kInner) {
  ModelConfig c;
  c.scoring.variant = v;
  return c;
}

TEST(CountParamsTest, BaseInner) {
  const auto t = CountParams(Base());
  // news attention 256*768 + 2*256, linears 768*256+256 and 256*256+256,
  // user attention 256*256 + 2*256.
  EXPECT_EQ(t.total, 525824u);
}

TEST(CountParamsTest, MeanPoolingEverywhere) {
  ModelConfig c = Base();
  c.news_pooling = Pooling::kMean;
  c.user_pooling = Pooling::kMean;
  EXPECT_EQ(CountParams(c).total, 262656u);
}

TEST(CountParamsTest, HeadDeltas) {
  const auto base = CountParams(Base()).total;
  EXPECT_EQ(CountParams(Base(ScoringVariant::kBilinear)).total - base, 65536u);
  EXPECT_EQ(CountParams(Base(ScoringVariant::kNonlinear)).total - base, 65792u);
  ModelConfig mlp = Base(ScoringVariant::kMlp);
  EXPECT_EQ(CountParams(mlp).total - base, 128u * 512u + 128u + 128u);
  mlp.scoring.mlp_outer_bias = true;
  EXPECT_EQ(CountParams(mlp).total - base, 128u * 512u + 128u + 128u + 1u);
}

TEST(CountParamsTest, HistoryTransformAddsLinearLayer) {
  ModelConfig c = Base();
  c.history_transform = HistoryTransform::kLinearRelu;
  EXPECT_EQ(CountParams(c).total - CountParams(Base()).total, 256u * 256u + 256u);
}

TEST(CountParamsTest, MatchesAllocatedScalars) {
  for (auto v : {ScoringVariant::kInner, ScoringVariant::kBilinear,
                 ScoringVariant::kNonlinear, ScoringVariant::kMlp}) {
    for (auto pool : {Pooling::kAttention, Pooling::kMean}) {
      ModelConfig c;
      c.input_dim = 12;
      c.dim = 6;
      c.att_dim = 5;
      c.scoring.variant = v;
      c.scoring.mlp_hidden = 4;
      c.news_pooling = pool;
      c.user_pooling = pool;
      c.history_transform = HistoryTransform::kLinearRelu;
      ModelParams p = InitModel(c);
      EXPECT_EQ(CountParams(c).total, p.NumScalars()) << ScoringName(v);
      std::size_t sum = 0;
      for (const auto& row : CountParams(c).blocks) sum += row.count;
      EXPECT_EQ(sum, CountParams(c).total);
    }
  }
}

TEST(ModelParamsTest, InitIsSeededAndFlattenRoundTrips) {
  ModelConfig c;
  c.input_dim = 8;
  c.dim = 4;
  c.att_dim = 3;
  ModelParams a = InitModel(c), b = InitModel(c);
  EXPECT_EQ(a.Flatten(), b.Flatten());
  c.init_seed = 8;
  EXPECT_NE(InitModel(c).Flatten(), a.Flatten());

  auto flat = a.Flatten();
  for (auto& v : flat) v += 1.0;
  a.Assign(flat);
  EXPECT_EQ(a.Flatten(), flat);
  flat.pop_back();
  EXPECT_THROW(a.Assign(flat), DimensionError);
  a.SetZero();
  for (double v : a.Flatten()) EXPECT_EQ(v, 0.0);
}

TEST(ModelConfigTest, ValidateNamesField) {
  ModelConfig c;
  c.dim = 0;
  try {
    c.Validate();
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "model.dim");
  }
}

}  // namespace
}  // namespace newsrec

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

#include "newsrec/embeddings.h"

#include <cmath>
#include <cstring>
#include <string>

#include <gtest/gtest.h>

#include "newsrec/errors.h"
#include "test_support.h"

namespace newsrec {
namespace {

std::string U16(uint16_t v) { return {static_cast<char>(v & 0xff), static_cast<char>(v >> 8)}; }

std::string U32(uint32_t v) {
  std::string s(4, '\0');
  for (int i = 0; i < 4; ++i) s[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  return s;
}

std::string F32(float f) {
  uint32_t bits;
  std::memcpy(&bits, &f, 4);
  return U32(bits);
}

// Hand-assembled file: dim 2, entries "a" (1 row) and "bb" (2 rows).
std::string HandBuiltNemb() {
  return std::string("NEMB") + U32(1) + U32(2) + U32(2) +
         U16(1) + "a" + U32(1) + F32(1.5f) + F32(-2.0f) +
         U16(2) + "bb" + U32(2) + F32(0.25f) + F32(0.5f) + F32(0.75f) + F32(1.0f);
}

TEST(TokenizeTest, LowercasesAndSplitsOnNonAlnum) {
  EXPECT_EQ(Tokenize("Hello, World-2024!"),
            (std::vector<std::string>{"hello", "world", "2024"}));
  EXPECT_TRUE(Tokenize(" ,;-- ").empty());
}

TEST(HashedEmbeddingTest, BoundedRowsAndDeterminism) {
  const HashedEmbeddingProvider p(4, 17);
  const auto m = p.EmbedText("alpha beta gamma");
  ASSERT_EQ(m.rows(), 3);
  ASSERT_EQ(m.cols(), 4);
  EXPECT_LE(m.cwiseAbs().maxCoeff(), 0.25f);
  EXPECT_EQ(m, HashedEmbeddingProvider(4, 17).EmbedText("alpha beta gamma"));
  EXPECT_NE(m, HashedEmbeddingProvider(4, 18).EmbedText("alpha beta gamma"));
}

TEST(HashedEmbeddingTest, RowsFollowTokenOrder) {
  const HashedEmbeddingProvider p(8, 3);
  const auto ab = p.EmbedText("alpha beta");
  const auto ba = p.EmbedText("Beta ALPHA");
  EXPECT_EQ(ab.row(0), ba.row(1));
  EXPECT_EQ(ab.row(1), ba.row(0));
  EXPECT_NE(ab.row(0), ab.row(1));
}

TEST(HashedEmbeddingTest, TruncatesAndHandlesEmptyTitle) {
  const HashedEmbeddingProvider p(8, 3, 2);
  EXPECT_EQ(p.EmbedText("a b c d").rows(), 2);
  const auto empty = p.EmbedText("!!!");
  ASSERT_EQ(empty.rows(), 1);
  EXPECT_EQ(empty, p.EmbedText(""));
  EXPECT_THROW(HashedEmbeddingProvider(0, 1), ConfigError);
}

TEST(NembTest, WriterMatchesHandBuiltBytes) {
  testing::TempDir dir;
  {
    NembWriter w(dir / "x.nemb", 2);
    EmbeddingMatrix a(1, 2), b(2, 2);
    a << 1.5f, -2.0f;
    b << 0.25f, 0.5f, 0.75f, 1.0f;
    w.Add("a", a);
    w.Add("bb", b);
    w.Finish();
  }
  EXPECT_EQ(testing::ReadFile(dir / "x.nemb"), HandBuiltNemb());
}

TEST(NembTest, StoreReadsHandBuiltFile) {
  testing::TempDir dir;
  testing::WriteFile(dir / "x.nemb", HandBuiltNemb());
  const auto store = NembStore::Open(dir / "x.nemb");
  EXPECT_EQ(store->dim(), 2);
  EXPECT_EQ(store->count(), 2u);
  EXPECT_TRUE(store->Contains("bb"));
  EXPECT_FALSE(store->Contains("c"));
  const auto bb = store->Lookup("bb");
  ASSERT_EQ(bb.rows(), 2);
  EXPECT_EQ(bb(1, 0), 0.75f);
  EXPECT_EQ(store->Embed({"a", "t", std::nullopt, std::nullopt})(0, 1), -2.0f);
  EXPECT_THROW(store->Lookup("c"), MissingIdError);
  EXPECT_EQ(NembStore::Open(dir / "x.nemb", 1)->Lookup("bb").rows(), 1);
}

TEST(NembTest, RoundTripRandomMatrices) {
  testing::TempDir dir;
  const HashedEmbeddingProvider p(16, 5);
  const std::vector<std::string> titles = {"one", "two words", "three more words", "x y z w v"};
  {
    NembWriter w(dir / "r.nemb", 16);
    for (std::size_t i = 0; i < titles.size(); ++i) {
      w.Add("N" + std::to_string(i), p.EmbedText(titles[i]));
    }
    w.Finish();
  }
  const auto store = NembStore::Open(dir / "r.nemb");
  ASSERT_EQ(store->count(), titles.size());
  for (std::size_t i = 0; i < titles.size(); ++i) {
    EXPECT_EQ(store->Lookup("N" + std::to_string(i)), p.EmbedText(titles[i]));
  }
}

TEST(NembTest, BadHeadersAreFormatErrors) {
  testing::TempDir dir;
  std::string bytes = HandBuiltNemb();
  testing::WriteFile(dir / "m.nemb", "XEMB" + bytes.substr(4));
  EXPECT_THROW(NembStore::Open(dir / "m.nemb"), FormatError);
  testing::WriteFile(dir / "v.nemb", "NEMB" + U32(2) + bytes.substr(8));
  EXPECT_THROW(NembStore::Open(dir / "v.nemb"), FormatError);
  testing::WriteFile(dir / "s.nemb", "NEMB");
  EXPECT_THROW(NembStore::Open(dir / "s.nemb"), FormatError);
}

TEST(NembTest, DamagedRecordsAreCorruptionErrors) {
  testing::TempDir dir;
  const std::string bytes = HandBuiltNemb();
  testing::WriteFile(dir / "t.nemb", bytes.substr(0, bytes.size() - 2));
  try {
    NembStore::Open(dir / "t.nemb");
    FAIL();
  } catch (const CorruptionError& e) {
    EXPECT_NE(std::string(e.what()).find("offset"), std::string::npos) << e.what();
  }
  testing::WriteFile(dir / "trail.nemb", bytes + "zz");
  EXPECT_THROW(NembStore::Open(dir / "trail.nemb"), CorruptionError);

  const std::string dup = std::string("NEMB") + U32(1) + U32(1) + U32(2) +
                          U16(1) + "a" + U32(1) + F32(1.0f) +
                          U16(1) + "a" + U32(1) + F32(2.0f);
  testing::WriteFile(dir / "dup.nemb", dup);
  EXPECT_THROW(NembStore::Open(dir / "dup.nemb"), CorruptionError);
}

TEST(NembTest, WriterRejectsBadEntries) {
  testing::TempDir dir;
  NembWriter w(dir / "w.nemb", 3);
  EXPECT_THROW(w.Add("a", EmbeddingMatrix::Zero(1, 2)), DimensionError);
  EXPECT_THROW(w.Add("a", EmbeddingMatrix::Zero(0, 3)), EmptyInputError);
  EXPECT_THROW(w.Add("", EmbeddingMatrix::Zero(1, 3)), FormatError);
}

}  // namespace
}  // namespace newsrec

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

#include "newsrec/corpus.h"

#include <sstream>

#include <gtest/gtest.h>

#include "newsrec/errors.h"
#include "test_support.h"

namespace newsrec {
namespace {

TEST(ParseNewsTest, MapsColumns) {
  std::istringstream in("N1\tsports\tsoccer\tTeam wins\tA short abstract\turl\t[]\t[]\n");
  const NewsTable t = ParseNews(in);
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t[0].id, "N1");
  EXPECT_EQ(t[0].title, "Team wins");
  EXPECT_EQ(t[0].category, "sports");
  EXPECT_EQ(t[0].abstract, "A short abstract");
}

TEST(ParseNewsTest, FourColumnsAndCrlf) {
  std::istringstream in("N1\tsports\tsoccer\tTeam wins\r\nN2\t\tx\tOther\r\n");
  const NewsTable t = ParseNews(in);
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t.At("N1").title, "Team wins");
  EXPECT_FALSE(t.At("N2").category.has_value());
  EXPECT_FALSE(t.At("N2").abstract.has_value());
}

TEST(ParseNewsTest, TooFewColumnsNamesLine) {
  std::istringstream in("N1\ta\tb\tTitle\nN2\tonly\n");
  try {
    ParseNews(in);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
}

TEST(ParseNewsTest, DuplicateIdIsNamed) {
  std::istringstream in("N1\ta\tb\tOne\nN1\ta\tb\tTwo\n");
  try {
    ParseNews(in);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("'N1'"), std::string::npos) << e.what();
  }
}

TEST(ParseNewsTest, EmptyTitleRejected) {
  std::istringstream in("N1\ta\tb\t\n");
  EXPECT_THROW(ParseNews(in), ParseError);
}

TEST(ParseBehaviorsTest, ParsesSession) {
  std::istringstream in("7\tU3\t11/11/2019 9:05:58 AM\tN1 N2\tN3-1 N4-0 N5-0\n");
  const auto s = ParseBehaviors(in);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].session_id, "7");
  EXPECT_EQ(s[0].user_id, "U3");
  EXPECT_EQ(s[0].history, (std::vector<std::string>{"N1", "N2"}));
  ASSERT_EQ(s[0].shown.size(), 3u);
  EXPECT_EQ(s[0].shown[0], (Impression{"N3", true}));
  EXPECT_EQ(s[0].shown[1], (Impression{"N4", false}));
  EXPECT_EQ(s[0].num_clicked(), 1u);
  EXPECT_FALSE(s[0].cold_start());
}

TEST(ParseBehaviorsTest, EmptyHistoryIsColdStart) {
  std::istringstream in("1\tU1\tt\t\tN3-1 N4-0\n");
  EXPECT_TRUE(ParseBehaviors(in)[0].cold_start());
}

TEST(ParseBehaviorsTest, MalformedTokens) {
  for (const char* bad : {"N3-2", "N3", "-1", "N3-10", "N3-"}) {
    std::istringstream in(std::string("1\tU1\tt\tN1\t") + bad + "\n");
    EXPECT_THROW(ParseBehaviors(in), ParseError) << bad;
  }
  std::istringstream cols("1\tU1\tN1\tN3-1\n");
  EXPECT_THROW(ParseBehaviors(cols), ParseError);
}

TEST(NewsTableTest, LookupAndDuplicates) {
  NewsTable t;
  t.Add({"a", "Title A", std::nullopt, std::nullopt});
  EXPECT_THROW(t.Add({"a", "Again", std::nullopt, std::nullopt}), ParseError);
  EXPECT_FALSE(t.AddIfAbsent({"a", "Again", std::nullopt, std::nullopt}));
  EXPECT_TRUE(t.AddIfAbsent({"b", "Title B", std::nullopt, std::nullopt}));
  EXPECT_EQ(t.IndexOf("b"), 1u);
  EXPECT_EQ(t.IndexOf("zz"), NewsTable::npos);
  EXPECT_THROW(t.At("zz"), MissingIdError);
  EXPECT_THROW(t.Add({"", "x", std::nullopt, std::nullopt}), ParseError);
}

Corpus SmallCorpus() {
  Corpus c;
  c.news.Add({"N1", "one", "cat", std::nullopt});
  c.news.Add({"N2", "two", std::nullopt, "abs"});
  c.news.Add({"N3", "three", std::nullopt, std::nullopt});
  c.train_sessions.push_back({"s1", "u1", {"N1"}, {{"N2", true}, {"N3", false}}});
  c.dev_sessions.push_back({"s2", "u2", {}, {{"N1", false}, {"N3", true}}});
  return c;
}

TEST(CorpusTest, ValidateCatchesDanglingIds) {
  Corpus c = SmallCorpus();
  EXPECT_NO_THROW(c.Validate());
  c.dev_sessions[0].shown.push_back({"N9", false});
  EXPECT_THROW(c.Validate(), MissingIdError);
}

TEST(CorpusTest, JsonlRoundTrip) {
  testing::TempDir dir;
  const Corpus c = SmallCorpus();
  SaveCorpus(c, dir.path());
  EXPECT_EQ(LoadCorpus(dir.path()), c);
}

TEST(CorpusTest, LoadMindMergesNewsAndPrefixesSessions) {
  testing::TempDir dir;
  std::filesystem::create_directories(dir / "train");
  std::filesystem::create_directories(dir / "dev");
  testing::WriteFile(dir / "train/news.tsv", "N1\ta\tb\tOne\nN2\ta\tb\tTwo\n");
  testing::WriteFile(dir / "dev/news.tsv", "N2\ta\tb\tTwo\nN3\ta\tb\tThree\n");
  testing::WriteFile(dir / "train/behaviors.tsv", "1\tU1\tt\tN1\tN2-1 N1-0\n");
  testing::WriteFile(dir / "dev/behaviors.tsv", "1\tU1\tt\tN1\tN3-1 N2-0\n");
  const Corpus c = LoadMindCorpus(dir / "train", dir / "dev");
  EXPECT_EQ(c.news.size(), 3u);
  ASSERT_EQ(c.train_sessions.size(), 1u);
  ASSERT_EQ(c.dev_sessions.size(), 1u);
  EXPECT_NE(c.train_sessions[0].session_id, c.dev_sessions[0].session_id);
  EXPECT_NO_THROW(c.Validate());
}

}  // namespace
}  // namespace newsrec

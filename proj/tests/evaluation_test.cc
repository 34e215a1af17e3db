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

#include "newsrec/evaluation.h"

#include <cmath>
#include <map>
#include <sstream>

#include <gtest/gtest.h>

#include "newsrec/errors.h"
#include "test_support.h"

namespace newsrec {
namespace {

// Scores each candidate by a fixed table.
class TableScorer final : public SessionScorer {
 public:
  explicit TableScorer(std::map<std::string, double> table) : table_(std::move(table)) {}
  std::vector<double> Score(const Session& s) const override {
    std::vector<double> out;
    for (const auto& imp : s.shown) out.push_back(table_.at(imp.news_id));
    return out;
  }

 private:
  std::map<std::string, double> table_;
};

TEST(EvaluateTest, AggregatesRankableImpressionsInPercent) {
  const TableScorer scorer({{"a", 0.9}, {"b", 0.3}, {"c", 0.5}, {"d", 0.1}});
  const std::vector<Session> sessions = {
      {"s1", "u", {"h"}, {{"a", true}, {"b", true}, {"c", false}, {"d", false}}},
      {"s2", "u", {"h"}, {{"a", false}, {"d", true}}},
      {"s3", "u", {"h"}, {{"a", true}}},  // single candidate: unrankable
  };
  const auto r = Evaluate(sessions, scorer, 1);
  EXPECT_EQ(r.metrics.n_impressions, 3u);
  EXPECT_EQ(r.metrics.n_unrankable, 1u);
  EXPECT_NEAR(r.metrics.auc, (75.0 + 0.0) / 2.0, 1e-12);
  EXPECT_NEAR(r.metrics.mrr, 100.0 * ((1.0 + 1.0 / 3.0) / 2.0 + 0.5) / 2.0, 1e-12);
  ASSERT_EQ(r.losses.size(), 3u);
  EXPECT_NEAR(r.losses[2], -std::log(0.9), 1e-15);
}

TEST(EvaluateTest, ColdStartIsSeededUniform) {
  const TableScorer scorer({});
  std::vector<Session> sessions;
  for (int i = 0; i < 200; ++i) {
    sessions.push_back({"s" + std::to_string(i), "u", {}, {{"a", true}, {"b", false}}});
  }
  const auto a = Evaluate(sessions, scorer, 7);
  const auto b = Evaluate(sessions, scorer, 7);
  const auto c = Evaluate(sessions, scorer, 8);
  EXPECT_EQ(a.metrics.n_cold_start, 200u);
  EXPECT_EQ(a.losses, b.losses);
  EXPECT_NE(a.losses, c.losses);
  EXPECT_NEAR(a.metrics.auc, 50.0, 8.0);
  // Session i uses DeriveSeed(seed, i).
  Rng rng(DeriveSeed(7, 3));
  EXPECT_EQ(a.impressions[3].scores[0], UniformUnit(rng));
  EXPECT_THROW(Evaluate({}, scorer, 1), Error);
}

TEST(EvaluateTest, ModelScorerUsesRecentHistory) {
  const Corpus corpus = testing::SeparableCorpus(10);
  const HashedEmbeddingProvider provider(6, 1);
  const NewsFeatures features(corpus.news, provider);
  ModelConfig c;
  c.input_dim = 6;
  c.dim = 4;
  c.att_dim = 3;
  c.user_pooling = Pooling::kMean;
  const ModelParams p = InitModel(c);
  const ModelScorer scorer(c, p, features, 2);
  const std::vector<std::string> hist = {"G1", "G2", "G3"};
  const Vector expected = (scorer.NewsVector(features.Index("G2")) +
                           scorer.NewsVector(features.Index("G3"))) / 2.0;
  EXPECT_LT((scorer.UserVector(hist) - expected).norm(), 1e-15);
  const auto scores = scorer.Score(corpus.train_sessions[0]);
  ASSERT_EQ(scores.size(), corpus.train_sessions[0].shown.size());
  for (double s : scores) {
    EXPECT_GT(s, 0.0);
    EXPECT_LT(s, 1.0);
  }
  Session bad = corpus.train_sessions[0];
  bad.shown[0].news_id = "nope";
  EXPECT_THROW(scorer.Score(bad), MissingIdError);
}

TEST(EvaluationIoTest, ImpressionsRoundTrip) {
  ScoredImpression s;
  s.session_id = "S1";
  s.scores = {0.1, 1.0 / 3.0};
  s.labels = {0, 1};
  s.mean_loss = 0.7;
  s.cold_start = true;
  std::stringstream ss;
  WriteImpressionsJsonl({s, s}, ss);
  const auto back = ReadImpressionsJsonl(ss);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].scores, s.scores);
  EXPECT_EQ(back[1].labels, s.labels);
  EXPECT_TRUE(back[1].cold_start);
}

TEST(EvaluationIoTest, LossesRoundTripExactly) {
  const std::vector<double> losses = {0.1, 1.0 / 3.0, 2.5e-300, 7.0};
  std::stringstream ss;
  WriteLosses(losses, ss);
  EXPECT_EQ(ReadLosses(ss), losses);
  std::stringstream bad("0.5\nabc\n");
  EXPECT_THROW(ReadLosses(bad), ParseError);
}

TEST(EvaluationIoTest, HistogramCountsEveryLoss) {
  std::stringstream ss;
  WriteLossHistogram({0.0, 0.5, 1.0, 1.0}, 2, ss);
  std::string header, line1, line2;
  std::getline(ss, header);
  std::getline(ss, line1);
  std::getline(ss, line2);
  EXPECT_EQ(header, "bin_lo,bin_hi,count");
  EXPECT_EQ(line1, "0.0,0.5,1");
  EXPECT_EQ(line2, "0.5,1.0,3");
  std::stringstream out;
  EXPECT_THROW(WriteLossHistogram({1.0}, 0, out), ConfigError);
}

}  // namespace
}  // namespace newsrec

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

#include "newsrec/metrics.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "newsrec/random.h"

namespace newsrec {
namespace {

using Labels = std::vector<char>;

TEST(MetricsTest, WorkedExample) {
  // Ranking: c0 (clicked), c2, c1 (clicked), c3.
  const std::vector<double> scores = {0.9, 0.3, 0.5, 0.1};
  const Labels labels = {1, 1, 0, 0};
  EXPECT_DOUBLE_EQ(*Auc(scores, labels), 0.75);
  EXPECT_DOUBLE_EQ(*Mrr(scores, labels), (1.0 + 1.0 / 3.0) / 2.0);
  const double dcg = 1.0 + 1.0 / std::log2(4.0);
  const double idcg = 1.0 + 1.0 / std::log2(3.0);
  EXPECT_NEAR(*Ndcg(scores, labels, 5), dcg / idcg, 1e-15);
}

TEST(MetricsTest, SingleClickAtSecondPosition) {
  const std::vector<double> scores = {0.2, 0.8, 0.1};
  const Labels labels = {1, 0, 0};
  EXPECT_DOUBLE_EQ(*Mrr(scores, labels), 0.5);
  EXPECT_NEAR(*Ndcg(scores, labels, 10), 0.6309297535714575, 1e-15);
  EXPECT_DOUBLE_EQ(*Auc(scores, labels), 0.5);
}

TEST(MetricsTest, TwoClicksMrr) {
  // Clicked items at ranks 1 and 4: (1 + 1/4) / 2 = 0.625.
  const std::vector<double> scores = {0.9, 0.8, 0.7, 0.6};
  const Labels labels = {1, 0, 0, 1};
  EXPECT_DOUBLE_EQ(*Mrr(scores, labels), 0.625);
}

TEST(MetricsTest, TiesCountHalfAndBreakByIndex) {
  const std::vector<double> scores = {0.5, 0.5};
  EXPECT_DOUBLE_EQ(*Auc(scores, Labels{1, 0}), 0.5);
  EXPECT_EQ(Ranks(scores), (std::vector<int>{1, 2}));
  // Index order decides the rank of tied items.
  EXPECT_DOUBLE_EQ(*Mrr(scores, Labels{0, 1}), 0.5);
  EXPECT_DOUBLE_EQ(*Mrr(scores, Labels{1, 0}), 1.0);
}

TEST(MetricsTest, PerfectAndReversedRankings) {
  const std::vector<double> scores = {0.9, 0.8, 0.2, 0.1};
  EXPECT_DOUBLE_EQ(*Auc(scores, Labels{1, 1, 0, 0}), 1.0);
  EXPECT_DOUBLE_EQ(*Ndcg(scores, Labels{1, 1, 0, 0}, 5), 1.0);
  EXPECT_DOUBLE_EQ(*Auc(scores, Labels{0, 0, 1, 1}), 0.0);
}

TEST(MetricsTest, UndefinedCases) {
  const std::vector<double> scores = {0.3, 0.2};
  EXPECT_FALSE(Auc(scores, Labels{0, 0}).has_value());
  EXPECT_FALSE(Auc(scores, Labels{1, 1}).has_value());
  EXPECT_FALSE(Mrr(scores, Labels{0, 0}).has_value());
  EXPECT_FALSE(Ndcg(scores, Labels{0, 0}, 5).has_value());
  EXPECT_TRUE(Mrr(scores, Labels{1, 1}).has_value());
}

TEST(MetricsTest, NdcgTruncatesAtK) {
  const std::vector<double> scores = {0.9, 0.8, 0.7};
  // Only clicked item sits at rank 3, outside the top 2.
  EXPECT_DOUBLE_EQ(*Ndcg(scores, Labels{0, 0, 1}, 2), 0.0);
}

TEST(MetricsTest, ScaleInvariance) {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> scores(10);
    Labels labels(10);
    for (int i = 0; i < 10; ++i) {
      scores[i] = UniformUnit(rng);
      labels[i] = static_cast<char>(UniformIndex(rng, 2));
    }
    labels[0] = 1;
    labels[1] = 0;
    std::vector<double> shifted(scores);
    for (auto& s : shifted) s = 3.0 * s + 7.0;
    EXPECT_DOUBLE_EQ(*Auc(scores, labels), *Auc(shifted, labels));
    EXPECT_DOUBLE_EQ(*Mrr(scores, labels), *Mrr(shifted, labels));
  }
}

}  // namespace
}  // namespace newsrec

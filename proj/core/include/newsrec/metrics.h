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

#ifndef NEWSREC_METRICS_H_
#define NEWSREC_METRICS_H_

#include <optional>
#include <span>
#include <vector>

namespace newsrec {

// Per-impression ranking metrics. Candidates are ranked by descending score,
// ties broken by original index. All return nullopt when the impression has
// no positive (AUC also when it has no negative).

// Probability that a random clicked candidate outscores a random non-clicked
// one; ties count one half.
std::optional<double> Auc(std::span<const double> scores,
                          std::span<const char> labels);

// Mean over clicked candidates of 1 / rank.
std::optional<double> Mrr(std::span<const double> scores,
                          std::span<const char> labels);

// DCG@k / ideal DCG@k with binary gains and log2(rank + 1) discounts.
std::optional<double> Ndcg(std::span<const double> scores,
                           std::span<const char> labels, int k);

// 1-based ranks under the ordering above.
std::vector<int> Ranks(std::span<const double> scores);

}  // namespace newsrec

#endif  // NEWSREC_METRICS_H_

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
#include <string>

#include "newsrec/errors.h"

namespace newsrec {
namespace {

void CheckSizes(std::span<const double> scores, std::span<const char> labels) {
  if (scores.size() != labels.size()) {
    throw DimensionError("metric: " + std::to_string(scores.size()) +
                         " scores vs " + std::to_string(labels.size()) +
                         " labels");
  }
}

std::vector<std::size_t> RankOrder(std::span<const double> scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] > scores[b];
  });
  return order;
}

}  // namespace

std::vector<int> Ranks(std::span<const double> scores) {
  const auto order = RankOrder(scores);
  std::vector<int> ranks(scores.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    ranks[order[pos]] = static_cast<int>(pos) + 1;
  }
  return ranks;
}

std::optional<double> Auc(std::span<const double> scores,
                          std::span<const char> labels) {
  CheckSizes(scores, labels);
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] < scores[b];
  });
  // Sweep tie groups in ascending score; each positive wins against every
  // negative below its group and half of the negatives inside it.
  double wins = 0.0;
  std::size_t neg_below = 0, positives = 0, negatives = 0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i, pos_here = 0, neg_here = 0;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) {
      (labels[order[j]] ? pos_here : neg_here)++;
      ++j;
    }
    wins += static_cast<double>(pos_here) *
            (static_cast<double>(neg_below) + 0.5 * static_cast<double>(neg_here));
    neg_below += neg_here;
    positives += pos_here;
    negatives += neg_here;
    i = j;
  }
  if (positives == 0 || negatives == 0) return std::nullopt;
  return wins / (static_cast<double>(positives) * static_cast<double>(negatives));
}

std::optional<double> Mrr(std::span<const double> scores,
                          std::span<const char> labels) {
  CheckSizes(scores, labels);
  const auto ranks = Ranks(scores);
  double sum = 0.0;
  int clicks = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!labels[i]) continue;
    sum += 1.0 / ranks[i];
    ++clicks;
  }
  if (clicks == 0) return std::nullopt;
  return sum / clicks;
}

std::optional<double> Ndcg(std::span<const double> scores,
                           std::span<const char> labels, int k) {
  CheckSizes(scores, labels);
  const auto order = RankOrder(scores);
  const auto positives = static_cast<std::size_t>(
      std::count_if(labels.begin(), labels.end(), [](char l) { return l != 0; }));
  if (positives == 0) return std::nullopt;
  const std::size_t cutoff = std::min<std::size_t>(k, order.size());
  double dcg = 0.0, ideal = 0.0;
  for (std::size_t pos = 0; pos < cutoff; ++pos) {
    const double discount = std::log2(static_cast<double>(pos) + 2.0);
    if (labels[order[pos]]) dcg += 1.0 / discount;
    if (pos < positives) ideal += 1.0 / discount;
  }
  return dcg / ideal;
}

}  // namespace newsrec

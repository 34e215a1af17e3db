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

#include "newsrec/dominance.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <boost/math/distributions/normal.hpp>

#include "newsrec/errors.h"
#include "newsrec/random.h"

namespace newsrec {
namespace {

constexpr double kTieTolerance = 1e-15;

// Type-1 quantile of sorted data at t = (2j - 1) / (2 grid), j = 1..grid:
// the ceil(n t)-th order statistic, with the index in integer arithmetic.
double GridQuantile(const std::vector<double>& sorted, int j, int grid) {
  const auto n = static_cast<uint64_t>(sorted.size());
  const uint64_t num = n * (2 * static_cast<uint64_t>(j) - 1);
  const uint64_t den = 2 * static_cast<uint64_t>(grid);
  const uint64_t k = (num + den - 1) / den;  // 1-based, in [1, n]
  return sorted[k - 1];
}

std::optional<double> EpsilonSorted(const std::vector<double>& x,
                                    const std::vector<double>& y, int grid) {
  double violation = 0.0, total = 0.0;
  for (int j = 1; j <= grid; ++j) {
    const double d = GridQuantile(x, j, grid) - GridQuantile(y, j, grid);
    const double d2 = d * d;
    total += d2;
    if (d > 0) violation += d2;
  }
  double mean_sq = 0.0;
  for (double v : x) mean_sq += v * v;
  for (double v : y) mean_sq += v * v;
  mean_sq /= static_cast<double>(x.size() + y.size());
  if (total / grid <= kTieTolerance * mean_sq) return std::nullopt;
  return violation / total;
}

void CheckInputs(std::span<const double> x, std::span<const double> y, int grid) {
  if (x.size() < 2 || y.size() < 2) {
    throw Error("dominance test needs at least 2 losses per sample, got " +
                std::to_string(x.size()) + " and " + std::to_string(y.size()));
  }
  if (grid < 100) throw Error("dominance grid must be at least 100");
  for (auto s : {x, y}) {
    for (double v : s) {
      if (!std::isfinite(v)) throw NonFiniteError("non-finite loss in sample");
    }
  }
}

std::vector<double> Sorted(std::span<const double> s) {
  std::vector<double> v(s.begin(), s.end());
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

std::optional<double> EpsilonHat(std::span<const double> x,
                                 std::span<const double> y, int grid) {
  CheckInputs(x, y, grid);
  return EpsilonSorted(Sorted(x), Sorted(y), grid);
}

std::string_view DecisionName(Decision d) {
  switch (d) {
    case Decision::kADominates:
      return "A_dominates";
    case Decision::kNoDecision:
      return "no_decision";
    case Decision::kTie:
      return "tie";
  }
  return "?";
}

DominanceReport DominanceTest(std::span<const double> x,
                              std::span<const double> y, double threshold,
                              double alpha, int bootstrap, uint64_t seed,
                              int grid) {
  CheckInputs(x, y, grid);
  if (bootstrap < 200) throw Error("dominance test needs at least 200 bootstrap replicates");
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error("alpha must lie in (0, 1)");
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw Error("violation threshold must lie in (0, 1)");
  }

  DominanceReport r;
  r.threshold = threshold;
  r.alpha = alpha;
  r.n = x.size();
  r.m = y.size();
  r.bootstrap = bootstrap;
  r.grid = grid;
  r.seed = seed;
  r.z = boost::math::quantile(boost::math::normal_distribution<double>(), 1.0 - alpha);

  const auto eps = EpsilonHat(x, y, grid);
  if (!eps) {
    r.decision = Decision::kTie;
    return r;
  }
  r.epsilon_hat = *eps;

  std::vector<double> replicates;
  replicates.reserve(bootstrap);
  std::vector<double> bx(x.size()), by(y.size());
  for (int b = 0; b < bootstrap; ++b) {
    Rng rng(DeriveSeed(seed, static_cast<uint64_t>(b)));
    for (auto& v : bx) v = x[UniformIndex(rng, x.size())];
    for (auto& v : by) v = y[UniformIndex(rng, y.size())];
    std::sort(bx.begin(), bx.end());
    std::sort(by.begin(), by.end());
    if (const auto e = EpsilonSorted(bx, by, grid)) replicates.push_back(*e);
  }
  if (replicates.size() >= 2) {
    double mean = 0.0;
    for (double e : replicates) mean += e;
    mean /= static_cast<double>(replicates.size());
    double var = 0.0;
    for (double e : replicates) var += (e - mean) * (e - mean);
    r.sigma_hat = std::sqrt(var / static_cast<double>(replicates.size() - 1));
  }
  r.decision = r.epsilon_hat <= threshold - r.z * r.sigma_hat
                   ? Decision::kADominates
                   : Decision::kNoDecision;
  return r;
}

nlohmann::json ToJson(const DominanceReport& r) {
  return {{"epsilon_hat", r.epsilon_hat},
          {"sigma_hat", r.sigma_hat},
          {"threshold", r.threshold},
          {"alpha", r.alpha},
          {"z", r.z},
          {"decision", std::string(DecisionName(r.decision))},
          {"n", r.n},
          {"m", r.m},
          {"bootstrap_B", r.bootstrap},
          {"grid", r.grid},
          {"seed", r.seed}};
}

}  // namespace newsrec

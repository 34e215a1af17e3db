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

#ifndef NEWSREC_DOMINANCE_H_
#define NEWSREC_DOMINANCE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include <nlohmann/json.hpp>

namespace newsrec {

// Almost stochastic dominance on loss samples. Model A (sample X) dominates
// B (sample Y) when its losses are smaller nearly everywhere; the violation
// ratio
//   eps = sum_j (Qx - Qy)^2 [Qx > Qy] / sum_j (Qx - Qy)^2
// is computed on the midpoint grid t_j = (j - 0.5) / G with type-1
// (inverse ECDF) empirical quantiles.

inline constexpr int kDefaultGrid = 1000;
inline constexpr int kDefaultBootstrap = 1000;

// nullopt signals a tie: the squared quantile mass per grid point is at most
// 1e-15 times the mean squared loss of the pooled samples.
// Throws Error when either sample has fewer than 2 values or grid < 100.
std::optional<double> EpsilonHat(std::span<const double> x,
                                 std::span<const double> y,
                                 int grid = kDefaultGrid);

enum class Decision { kADominates, kNoDecision, kTie };
std::string_view DecisionName(Decision d);

struct DominanceReport {
  double epsilon_hat = 0.0;
  double sigma_hat = 0.0;  // bootstrap std of epsilon_hat
  double threshold = 0.33;
  double alpha = 0.01;
  double z = 0.0;          // standard normal quantile at 1 - alpha
  Decision decision = Decision::kNoDecision;
  std::size_t n = 0;
  std::size_t m = 0;
  int bootstrap = kDefaultBootstrap;
  int grid = kDefaultGrid;
  uint64_t seed = 0;
};

// A dominates when eps_hat <= threshold - z * sigma_hat, i.e. H0: eps >=
// threshold is rejected at level alpha. sigma_hat comes from B bootstrap
// replicates that resample X and Y independently with replacement;
// replicate b uses DeriveSeed(seed, b). Requires B >= 200.
DominanceReport DominanceTest(std::span<const double> x,
                              std::span<const double> y, double threshold,
                              double alpha, int bootstrap, uint64_t seed,
                              int grid = kDefaultGrid);

nlohmann::json ToJson(const DominanceReport& r);

}  // namespace newsrec

#endif  // NEWSREC_DOMINANCE_H_

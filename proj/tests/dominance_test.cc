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
#include <vector>

#include <gtest/gtest.h>

#include "newsrec/errors.h"
#include "newsrec/random.h"

namespace newsrec {
namespace {

// Reference violation ratio written from the definition, using floating
// point quantile positions instead of the library's integer arithmetic.
double ReferenceEpsilon(std::vector<double> x, std::vector<double> y, int grid) {
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const auto q = [](const std::vector<double>& s, double t) {
    auto k = static_cast<std::size_t>(std::ceil(t * static_cast<double>(s.size()) - 1e-9));
    k = std::clamp<std::size_t>(k, 1, s.size());
    return s[k - 1];
  };
  double num = 0.0, den = 0.0;
  for (int j = 1; j <= grid; ++j) {
    const double t = (j - 0.5) / grid;
    const double d = q(x, t) - q(y, t);
    den += d * d;
    if (d > 0) num += d * d;
  }
  return num / den;
}

std::vector<double> Draw(Rng& rng, int n, double shift = 0.0) {
  std::vector<double> v(n);
  for (auto& x : v) x = StandardNormal(rng) + shift;
  return v;
}

TEST(EpsilonHatTest, TwoPointExample) {
  const std::vector<double> x = {1.0, 4.0};
  const std::vector<double> y = {2.0, 3.0};
  EXPECT_DOUBLE_EQ(*EpsilonHat(x, y), 0.5);
}

TEST(EpsilonHatTest, ShiftedSampleHasNoViolation) {
  Rng rng(1);
  const auto x = Draw(rng, 300);
  std::vector<double> y(x);
  for (auto& v : y) v += 1.0;
  EXPECT_EQ(*EpsilonHat(x, y), 0.0);
  EXPECT_EQ(*EpsilonHat(y, x), 1.0);
}

TEST(EpsilonHatTest, IdenticalSamplesAreATie) {
  const std::vector<double> x = {0.3, 0.1, 0.7, 0.2};
  EXPECT_FALSE(EpsilonHat(x, x).has_value());
  std::vector<double> permuted = {0.7, 0.2, 0.3, 0.1};
  EXPECT_FALSE(EpsilonHat(x, permuted).has_value());
}

TEST(EpsilonHatTest, MatchesReference) {
  Rng rng(8);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(UniformIndex(rng, 300));
    const int m = 2 + static_cast<int>(UniformIndex(rng, 300));
    const auto x = Draw(rng, n, 0.2);
    const auto y = Draw(rng, m);
    for (int grid : {100, 1000, 1237}) {
      EXPECT_NEAR(*EpsilonHat(x, y, grid), ReferenceEpsilon(x, y, grid), 1e-12)
          << "n=" << n << " m=" << m << " grid=" << grid;
    }
  }
}

TEST(EpsilonHatTest, SwappingArgumentsComplements) {
  Rng rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const auto x = Draw(rng, 50);
    const auto y = Draw(rng, 70);
    EXPECT_NEAR(*EpsilonHat(x, y) + *EpsilonHat(y, x), 1.0, 1e-12);
  }
}

TEST(EpsilonHatTest, InvariantToPositiveScaling) {
  Rng rng(4);
  const auto x = Draw(rng, 80);
  const auto y = Draw(rng, 90, 0.3);
  std::vector<double> x2(x), y2(y);
  for (auto& v : x2) v *= 2.5;
  for (auto& v : y2) v *= 2.5;
  EXPECT_NEAR(*EpsilonHat(x, y), *EpsilonHat(x2, y2), 1e-12);
}

TEST(EpsilonHatTest, RejectsBadInput) {
  const std::vector<double> one = {1.0};
  const std::vector<double> two = {1.0, 2.0};
  EXPECT_THROW(EpsilonHat(one, two), Error);
  EXPECT_THROW(EpsilonHat(two, two, 50), Error);
  const std::vector<double> bad = {1.0, std::nan("")};
  EXPECT_THROW(EpsilonHat(bad, two), NonFiniteError);
}

TEST(DominanceTestTest, IdenticalSamplesTie) {
  Rng rng(2);
  const auto x = Draw(rng, 100);
  const auto r = DominanceTest(x, x, 0.33, 0.01, 200, 5);
  EXPECT_EQ(r.decision, Decision::kTie);
  EXPECT_EQ(DecisionName(r.decision), "tie");
}

TEST(DominanceTestTest, ClearlyBetterModelDominates) {
  Rng rng(3);
  const auto x = Draw(rng, 500);
  const auto y = Draw(rng, 500, 2.0);
  const auto r = DominanceTest(x, y, 0.33, 0.01, 300, 7);
  EXPECT_EQ(r.decision, Decision::kADominates);
  EXPECT_LT(r.epsilon_hat, 0.01);
  EXPECT_NEAR(r.z, 2.3263478740408408, 1e-12);
}

TEST(DominanceTestTest, WorseModelDoesNotDominate) {
  Rng rng(3);
  const auto x = Draw(rng, 500, 2.0);
  const auto y = Draw(rng, 500);
  EXPECT_EQ(DominanceTest(x, y, 0.33, 0.01, 300, 7).decision, Decision::kNoDecision);
}

TEST(DominanceTestTest, BootstrapIsSeeded) {
  Rng rng(5);
  const auto x = Draw(rng, 200);
  const auto y = Draw(rng, 200, 0.1);
  const auto a = DominanceTest(x, y, 0.33, 0.01, 200, 11);
  const auto b = DominanceTest(x, y, 0.33, 0.01, 200, 11);
  const auto c = DominanceTest(x, y, 0.33, 0.01, 200, 12);
  EXPECT_EQ(a.sigma_hat, b.sigma_hat);
  EXPECT_NE(a.sigma_hat, c.sigma_hat);
  EXPECT_GT(a.sigma_hat, 0.0);
  EXPECT_EQ(ToJson(a).dump(), ToJson(b).dump());
}

TEST(DominanceTestTest, RejectsBadParameters) {
  const std::vector<double> x = {1.0, 2.0, 3.0};
  const std::vector<double> y = {2.0, 3.0, 4.0};
  EXPECT_THROW(DominanceTest(x, y, 0.33, 0.01, 199, 0), Error);
  EXPECT_THROW(DominanceTest(x, y, 0.33, 0.0, 200, 0), Error);
  EXPECT_THROW(DominanceTest(x, y, 0.0, 0.01, 200, 0), Error);
}

TEST(DominanceTestTest, JsonFields) {
  const std::vector<double> x = {1.0, 2.0, 3.0};
  const std::vector<double> y = {2.0, 3.0, 5.0};
  const auto j = ToJson(DominanceTest(x, y, 0.33, 0.01, 200, 1));
  for (const char* key : {"epsilon_hat", "sigma_hat", "threshold", "alpha", "decision",
                          "n", "m", "bootstrap_B", "seed"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
}

}  // namespace
}  // namespace newsrec

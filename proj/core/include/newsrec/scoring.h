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

#ifndef NEWSREC_SCORING_H_
#define NEWSREC_SCORING_H_

#include <string>
#include <string_view>

#include "newsrec/numerics.h"

namespace newsrec {

// Scoring heads s(u, c) in (0, 1):
//   inner      sigmoid(c^T u)
//   bilinear   sigmoid(c^T A u)
//   nonlinear  sigmoid(c^T a(A u + b))
//   mlp        sigmoid(W2 a(W1 [u || c] + b))      (optional outer bias)
enum class ScoringVariant { kInner, kBilinear, kNonlinear, kMlp };

std::string_view ScoringName(ScoringVariant v);
ScoringVariant ParseScoring(std::string_view name, const std::string& field);

double ScoreInner(const Vector& u, const Vector& c);
double ScoreBilinear(const Vector& u, const Vector& c, const Matrix& A);
double ScoreNonlinear(const Vector& u, const Vector& c, const Matrix& A,
                      const Vector& b, Activation a);
double ScoreMlp(const Vector& u, const Vector& c, const Matrix& W1,
                const Vector& b, const Matrix& W2, Activation a);

struct ScoringConfig {
  ScoringVariant variant = ScoringVariant::kInner;
  Activation activation = Activation::kRelu;
  Eigen::Index mlp_hidden = 128;
  bool mlp_outer_bias = false;
};

// Only the blocks of the active variant are allocated; the rest stay empty.
struct ScoringParams {
  Matrix A;       // dim x dim (bilinear, nonlinear)
  Vector b;       // dim (nonlinear) or mlp_hidden (mlp)
  Matrix W1;      // mlp_hidden x 2 dim
  Matrix W2;      // 1 x mlp_hidden
  Vector b_out;   // size 1 when the mlp outer bias is enabled

  static ScoringParams Init(const ScoringConfig& cfg, Eigen::Index dim, Rng& rng);
  static ScoringParams Zeros(const ScoringConfig& cfg, Eigen::Index dim);
};

struct ScoringCache {
  Vector pre;     // A u + b, or W1 [u || c] + b
  Vector hidden;  // A u (bilinear) or a(pre)
};

// Pre-sigmoid score.
double ScoreLogit(const ScoringConfig& cfg, const ScoringParams& p,
                  const Vector& u, const Vector& c,
                  ScoringCache* cache = nullptr);

inline double Score(const ScoringConfig& cfg, const ScoringParams& p,
                    const Vector& u, const Vector& c) {
  return num::Sigmoid(ScoreLogit(cfg, p, u, c));
}

// Given d(loss)/d(logit), accumulates parameter gradients into `grads` and
// adds the input gradients into `d_u` and `d_c`.
void ScoreLogitBackward(const ScoringConfig& cfg, const ScoringParams& p,
                        const Vector& u, const Vector& c,
                        const ScoringCache& cache, double d_logit,
                        ScoringParams& grads, Vector& d_u, Vector& d_c);

}  // namespace newsrec

#endif  // NEWSREC_SCORING_H_

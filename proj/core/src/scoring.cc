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

#include "newsrec/scoring.h"

#include "newsrec/errors.h"

namespace newsrec {
namespace {

void CheckSameLength(const Vector& u, const Vector& c) {
  if (u.size() != c.size()) {
    throw DimensionError("score: user " + num::Shape(u) + " vs candidate " +
                         num::Shape(c));
  }
}

void CheckSquare(const Matrix& A, const Vector& u) {
  if (A.rows() != A.cols() || A.cols() != u.size()) {
    throw DimensionError("score: A " + num::Shape(A) + " vs vector " +
                         num::Shape(u));
  }
}

}  // namespace

std::string_view ScoringName(ScoringVariant v) {
  switch (v) {
    case ScoringVariant::kInner:
      return "inner";
    case ScoringVariant::kBilinear:
      return "bilinear";
    case ScoringVariant::kNonlinear:
      return "nonlinear";
    case ScoringVariant::kMlp:
      return "mlp";
  }
  return "?";
}

ScoringVariant ParseScoring(std::string_view name, const std::string& field) {
  if (name == "inner") return ScoringVariant::kInner;
  if (name == "bilinear") return ScoringVariant::kBilinear;
  if (name == "nonlinear") return ScoringVariant::kNonlinear;
  if (name == "mlp") return ScoringVariant::kMlp;
  throw ConfigError(field, "expected inner|bilinear|nonlinear|mlp, got '" +
                               std::string(name) + "'");
}

double ScoreInner(const Vector& u, const Vector& c) {
  CheckSameLength(u, c);
  return num::Sigmoid(c.dot(u));
}

double ScoreBilinear(const Vector& u, const Vector& c, const Matrix& A) {
  CheckSameLength(u, c);
  CheckSquare(A, u);
  return num::Sigmoid(c.dot(A * u));
}

double ScoreNonlinear(const Vector& u, const Vector& c, const Matrix& A,
                      const Vector& b, Activation a) {
  CheckSameLength(u, c);
  CheckSquare(A, u);
  if (b.size() != A.rows()) {
    throw DimensionError("score: b " + num::Shape(b) + " vs A " + num::Shape(A));
  }
  return num::Sigmoid(c.dot(Activate(a, A * u + b)));
}

double ScoreMlp(const Vector& u, const Vector& c, const Matrix& W1,
                const Vector& b, const Matrix& W2, Activation a) {
  const Vector x = num::Concat(u, c);
  const Vector pre = num::MatVec(W1, x);
  if (b.size() != pre.size()) {
    throw DimensionError("score: b " + num::Shape(b) + " vs W1 " + num::Shape(W1));
  }
  const Vector hidden = Activate(a, pre + b);
  if (W2.rows() != 1) {
    throw DimensionError("score: W2 " + num::Shape(W2) + " must have one row");
  }
  return num::Sigmoid(num::MatVec(W2, hidden)(0));
}

ScoringParams ScoringParams::Init(const ScoringConfig& cfg, Eigen::Index dim,
                                  Rng& rng) {
  ScoringParams p;
  switch (cfg.variant) {
    case ScoringVariant::kInner:
      break;
    case ScoringVariant::kBilinear:
      p.A = GlorotUniform(dim, dim, rng);
      break;
    case ScoringVariant::kNonlinear:
      p.A = GlorotUniform(dim, dim, rng);
      p.b = Vector::Zero(dim);
      break;
    case ScoringVariant::kMlp:
      p.W1 = GlorotUniform(cfg.mlp_hidden, 2 * dim, rng);
      p.b = Vector::Zero(cfg.mlp_hidden);
      p.W2 = GlorotUniform(1, cfg.mlp_hidden, rng);
      if (cfg.mlp_outer_bias) p.b_out = Vector::Zero(1);
      break;
  }
  return p;
}

ScoringParams ScoringParams::Zeros(const ScoringConfig& cfg, Eigen::Index dim) {
  ScoringParams p;
  switch (cfg.variant) {
    case ScoringVariant::kInner:
      break;
    case ScoringVariant::kBilinear:
      p.A = Matrix::Zero(dim, dim);
      break;
    case ScoringVariant::kNonlinear:
      p.A = Matrix::Zero(dim, dim);
      p.b = Vector::Zero(dim);
      break;
    case ScoringVariant::kMlp:
      p.W1 = Matrix::Zero(cfg.mlp_hidden, 2 * dim);
      p.b = Vector::Zero(cfg.mlp_hidden);
      p.W2 = Matrix::Zero(1, cfg.mlp_hidden);
      if (cfg.mlp_outer_bias) p.b_out = Vector::Zero(1);
      break;
  }
  return p;
}

double ScoreLogit(const ScoringConfig& cfg, const ScoringParams& p,
                  const Vector& u, const Vector& c, ScoringCache* cache) {
  CheckSameLength(u, c);
  ScoringCache local;
  ScoringCache& k = cache != nullptr ? *cache : local;
  switch (cfg.variant) {
    case ScoringVariant::kInner:
      return c.dot(u);
    case ScoringVariant::kBilinear:
      CheckSquare(p.A, u);
      k.hidden = p.A * u;
      return c.dot(k.hidden);
    case ScoringVariant::kNonlinear:
      CheckSquare(p.A, u);
      k.pre = p.A * u + p.b;
      k.hidden = Activate(cfg.activation, k.pre);
      return c.dot(k.hidden);
    case ScoringVariant::kMlp: {
      k.pre = num::MatVec(p.W1, num::Concat(u, c)) + p.b;
      k.hidden = Activate(cfg.activation, k.pre);
      double logit = p.W2.row(0).dot(k.hidden);
      if (p.b_out.size() == 1) logit += p.b_out(0);
      return logit;
    }
  }
  return 0.0;
}

void ScoreLogitBackward(const ScoringConfig& cfg, const ScoringParams& p,
                        const Vector& u, const Vector& c,
                        const ScoringCache& cache, double d_logit,
                        ScoringParams& grads, Vector& d_u, Vector& d_c) {
  switch (cfg.variant) {
    case ScoringVariant::kInner:
      d_u += d_logit * c;
      d_c += d_logit * u;
      return;
    case ScoringVariant::kBilinear: {
      const Vector dv = d_logit * c;
      grads.A.noalias() += dv * u.transpose();
      d_u.noalias() += p.A.transpose() * dv;
      d_c += d_logit * cache.hidden;
      return;
    }
    case ScoringVariant::kNonlinear: {
      const Vector d_pre =
          ActivateBackward(cfg.activation, cache.pre, cache.hidden, d_logit * c);
      grads.A.noalias() += d_pre * u.transpose();
      grads.b += d_pre;
      d_u.noalias() += p.A.transpose() * d_pre;
      d_c += d_logit * cache.hidden;
      return;
    }
    case ScoringVariant::kMlp: {
      grads.W2.row(0) += d_logit * cache.hidden.transpose();
      if (p.b_out.size() == 1) grads.b_out(0) += d_logit;
      const Vector d_pre = ActivateBackward(cfg.activation, cache.pre,
                                            cache.hidden,
                                            d_logit * p.W2.row(0).transpose());
      const Vector x = num::Concat(u, c);
      grads.W1.noalias() += d_pre * x.transpose();
      grads.b += d_pre;
      const Vector dx = p.W1.transpose() * d_pre;
      d_u += dx.head(u.size());
      d_c += dx.tail(c.size());
      return;
    }
  }
}

}  // namespace newsrec

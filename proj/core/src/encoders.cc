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

#include "newsrec/encoders.h"

#include "newsrec/errors.h"

namespace newsrec {

AttentionParams AttentionParams::Init(Eigen::Index d_att, Eigen::Index d_in,
                                      Rng& rng) {
  AttentionParams p;
  p.W = GlorotUniform(d_att, d_in, rng);
  p.b = Vector::Zero(d_att);
  // q is a d_att x 1 projection.
  p.q = GlorotUniform(d_att, 1, rng).col(0);
  return p;
}

AttentionParams AttentionParams::Zeros(Eigen::Index d_att, Eigen::Index d_in) {
  return {Matrix::Zero(d_att, d_in), Vector::Zero(d_att), Vector::Zero(d_att)};
}

LinearParams LinearParams::Init(Eigen::Index out, Eigen::Index in, Rng& rng) {
  return {GlorotUniform(out, in, rng), Vector::Zero(out)};
}

LinearParams LinearParams::Zeros(Eigen::Index out, Eigen::Index in) {
  return {Matrix::Zero(out, in), Vector::Zero(out)};
}

AttentionOutput AdditiveAttention(const Matrix& inputs, const AttentionParams& p,
                                  AttentionCache* cache) {
  if (inputs.rows() == 0) {
    throw EmptyInputError("additive attention over zero items");
  }
  if (inputs.cols() != p.W.cols()) {
    throw DimensionError("additive attention: inputs " + num::Shape(inputs) +
                         " vs W " + num::Shape(p.W));
  }
  Matrix hidden = inputs * p.W.transpose();
  hidden.rowwise() += p.b.transpose();
  hidden = hidden.array().tanh();
  Vector weights = num::Softmax(hidden * p.q);
  AttentionOutput out{inputs.transpose() * weights, weights};
  if (cache != nullptr) {
    cache->hidden = std::move(hidden);
    cache->weights = std::move(weights);
  }
  return out;
}

void AdditiveAttentionBackward(const Matrix& inputs, const AttentionParams& p,
                               const AttentionCache& cache,
                               const Vector& d_pooled, AttentionParams& grads,
                               Matrix* d_inputs) {
  const Vector& alpha = cache.weights;
  const Vector d_alpha = inputs * d_pooled;
  const Vector d_scores = num::SoftmaxBackward(alpha, d_alpha);
  grads.q.noalias() += cache.hidden.transpose() * d_scores;
  // dZ = (d_scores q^T) .* (1 - tanh^2)
  const Matrix d_pre =
      (d_scores * p.q.transpose()).array() * (1.0 - cache.hidden.array().square());
  grads.W.noalias() += d_pre.transpose() * inputs;
  grads.b.noalias() += d_pre.colwise().sum().transpose();
  if (d_inputs != nullptr) {
    *d_inputs = alpha * d_pooled.transpose();
    d_inputs->noalias() += d_pre * p.W;
  }
}

std::string_view PoolingName(Pooling p) {
  return p == Pooling::kAttention ? "attention" : "mean";
}

Pooling ParsePooling(std::string_view name, const std::string& field) {
  if (name == "attention") return Pooling::kAttention;
  if (name == "mean") return Pooling::kMean;
  throw ConfigError(field,
                    "expected attention|mean, got '" + std::string(name) + "'");
}

std::string_view HistoryTransformName(HistoryTransform t) {
  return t == HistoryTransform::kNone ? "none" : "linear_relu";
}

HistoryTransform ParseHistoryTransform(std::string_view name,
                                       const std::string& field) {
  if (name == "none") return HistoryTransform::kNone;
  if (name == "linear_relu") return HistoryTransform::kLinearRelu;
  throw ConfigError(field,
                    "expected none|linear_relu, got '" + std::string(name) + "'");
}

Vector MeanRows(const Matrix& rows) {
  if (rows.rows() == 0) throw EmptyInputError("mean over zero items");
  return rows.colwise().mean().transpose();
}

Vector EncodeNews(const Matrix& tokens, const NewsEncoderParams& p,
                  const NewsEncoderConfig& cfg, NewsEncoderCache* cache) {
  if (tokens.rows() == 0) throw EmptyInputError("news with zero tokens");
  NewsEncoderCache local;
  NewsEncoderCache& c = cache != nullptr ? *cache : local;
  if (cfg.pooling == Pooling::kAttention) {
    c.pooled = AdditiveAttention(tokens, *p.att, &c.att).pooled;
  } else {
    c.pooled = MeanRows(tokens);
  }
  c.z1 = num::MatVec(p.l1.W, c.pooled) + p.l1.b;
  c.h1 = num::Relu(c.z1);
  c.z2 = num::MatVec(p.l2.W, c.h1) + p.l2.b;
  return cfg.final_relu ? num::Relu(c.z2) : c.z2;
}

void EncodeNewsBackward(const Matrix& tokens, const NewsEncoderParams& p,
                        const NewsEncoderConfig& cfg,
                        const NewsEncoderCache& cache, const Vector& d_news,
                        NewsEncoderParams& grads) {
  const Vector d_z2 =
      cfg.final_relu ? num::ReluBackward(cache.z2, d_news) : d_news;
  grads.l2.W.noalias() += d_z2 * cache.h1.transpose();
  grads.l2.b += d_z2;
  const Vector d_z1 = num::ReluBackward(cache.z1, p.l2.W.transpose() * d_z2);
  grads.l1.W.noalias() += d_z1 * cache.pooled.transpose();
  grads.l1.b += d_z1;
  if (cfg.pooling == Pooling::kAttention) {
    const Vector d_pooled = p.l1.W.transpose() * d_z1;
    AdditiveAttentionBackward(tokens, *p.att, cache.att, d_pooled, *grads.att,
                              nullptr);
  }
}

Vector EncodeUser(const Matrix& history, const UserEncoderParams& p,
                  const UserEncoderConfig& cfg, UserEncoderCache* cache) {
  if (history.rows() == 0) throw EmptyInputError("user with an empty history");
  UserEncoderCache local;
  UserEncoderCache& c = cache != nullptr ? *cache : local;
  const Matrix* items = &history;
  if (cfg.transform == HistoryTransform::kLinearRelu) {
    if (history.cols() != p.transform->W.cols()) {
      throw DimensionError("history transform: history " + num::Shape(history) +
                           " vs T " + num::Shape(p.transform->W));
    }
    c.pre = history * p.transform->W.transpose();
    c.pre.rowwise() += p.transform->b.transpose();
    c.transformed = c.pre.cwiseMax(0.0);
    items = &c.transformed;
  }
  if (cfg.pooling == Pooling::kAttention) {
    return AdditiveAttention(*items, *p.att, &c.att).pooled;
  }
  return MeanRows(*items);
}

Vector EncodeUser(const std::vector<Vector>& history,
                  const UserEncoderParams& p, const UserEncoderConfig& cfg) {
  if (history.empty()) throw EmptyInputError("user with an empty history");
  Matrix rows(history.size(), history.front().size());
  for (std::size_t t = 0; t < history.size(); ++t) {
    if (history[t].size() != rows.cols()) {
      throw DimensionError("history item " + std::to_string(t) + " has shape " +
                           num::Shape(history[t]) + ", expected [" +
                           std::to_string(rows.cols()) + "]");
    }
    rows.row(t) = history[t].transpose();
  }
  return EncodeUser(rows, p, cfg);
}

void EncodeUserBackward(const Matrix& history, const UserEncoderParams& p,
                        const UserEncoderConfig& cfg,
                        const UserEncoderCache& cache, const Vector& d_user,
                        UserEncoderParams& grads, Matrix& d_history) {
  const bool transformed = cfg.transform == HistoryTransform::kLinearRelu;
  const Matrix& items = transformed ? cache.transformed : history;
  Matrix d_items;
  if (cfg.pooling == Pooling::kAttention) {
    AdditiveAttentionBackward(items, *p.att, cache.att, d_user, *grads.att,
                              &d_items);
  } else {
    d_items = (d_user / static_cast<double>(items.rows()))
                  .transpose()
                  .replicate(items.rows(), 1);
  }
  if (!transformed) {
    d_history = std::move(d_items);
    return;
  }
  const Matrix d_pre = (cache.pre.array() > 0.0).select(d_items, 0.0);
  grads.transform->W.noalias() += d_pre.transpose() * history;
  grads.transform->b.noalias() += d_pre.colwise().sum().transpose();
  d_history = d_pre * p.transform->W;
}

}  // namespace newsrec

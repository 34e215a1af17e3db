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

#include "newsrec/model.h"

#include <algorithm>

#include "newsrec/errors.h"

namespace newsrec {
namespace {

void AddMatrix(std::vector<ParamBlock>& out, const std::string& name, Matrix& m) {
  if (m.size() > 0) out.push_back({name, m.data(), m.rows(), m.cols()});
}

void AddVector(std::vector<ParamBlock>& out, const std::string& name, Vector& v) {
  if (v.size() > 0) out.push_back({name, v.data(), v.size(), 1});
}

void AddAttention(std::vector<ParamBlock>& out, const std::string& prefix,
                  AttentionParams& p) {
  AddMatrix(out, prefix + ".W", p.W);
  AddVector(out, prefix + ".b", p.b);
  AddVector(out, prefix + ".q", p.q);
}

void AddLinear(std::vector<ParamBlock>& out, const std::string& prefix,
               LinearParams& p) {
  AddMatrix(out, prefix + ".W", p.W);
  AddVector(out, prefix + ".b", p.b);
}

ModelParams Build(const ModelConfig& cfg, Rng* rng) {
  cfg.Validate();
  const Eigen::Index d_in = cfg.input_dim, dim = cfg.dim, d_att = cfg.att_dim;
  ModelParams p;
  // Fixed draw order: news attention, news linears, user attention,
  // history transform, scoring head.
  if (cfg.news_pooling == Pooling::kAttention) {
    p.news.att = rng ? AttentionParams::Init(d_att, d_in, *rng)
                     : AttentionParams::Zeros(d_att, d_in);
  }
  p.news.l1 = rng ? LinearParams::Init(dim, d_in, *rng) : LinearParams::Zeros(dim, d_in);
  p.news.l2 = rng ? LinearParams::Init(dim, dim, *rng) : LinearParams::Zeros(dim, dim);
  if (cfg.user_pooling == Pooling::kAttention) {
    p.user.att = rng ? AttentionParams::Init(d_att, dim, *rng)
                     : AttentionParams::Zeros(d_att, dim);
  }
  if (cfg.history_transform == HistoryTransform::kLinearRelu) {
    p.user.transform =
        rng ? LinearParams::Init(dim, dim, *rng) : LinearParams::Zeros(dim, dim);
  }
  p.scoring = rng ? ScoringParams::Init(cfg.scoring, dim, *rng)
                  : ScoringParams::Zeros(cfg.scoring, dim);
  return p;
}

}  // namespace

void ModelConfig::Validate() const {
  if (input_dim <= 0) throw ConfigError("model.input_dim", "must be positive");
  if (dim <= 0) throw ConfigError("model.dim", "must be positive");
  if (att_dim <= 0) throw ConfigError("model.att_dim", "must be positive");
  if (scoring.variant == ScoringVariant::kMlp && scoring.mlp_hidden <= 0) {
    throw ConfigError("model.mlp_hidden", "must be positive");
  }
}

std::vector<ParamBlock> ModelParams::Blocks() {
  std::vector<ParamBlock> out;
  if (news.att) AddAttention(out, "news.att", *news.att);
  AddLinear(out, "news.l1", news.l1);
  AddLinear(out, "news.l2", news.l2);
  if (user.att) AddAttention(out, "user.att", *user.att);
  if (user.transform) AddLinear(out, "user.transform", *user.transform);
  AddMatrix(out, "score.A", scoring.A);
  AddVector(out, "score.b", scoring.b);
  AddMatrix(out, "score.W1", scoring.W1);
  AddMatrix(out, "score.W2", scoring.W2);
  AddVector(out, "score.b_out", scoring.b_out);
  return out;
}

std::size_t ModelParams::NumScalars() {
  std::size_t n = 0;
  for (const auto& b : Blocks()) n += static_cast<std::size_t>(b.size());
  return n;
}

std::vector<double> ModelParams::Flatten() {
  std::vector<double> flat;
  for (const auto& b : Blocks()) flat.insert(flat.end(), b.data, b.data + b.size());
  return flat;
}

void ModelParams::Assign(std::span<const double> flat) {
  std::size_t off = 0;
  for (const auto& b : Blocks()) {
    if (off + b.size() > flat.size()) {
      throw DimensionError("Assign: flat vector too short at block " + b.name);
    }
    std::copy_n(flat.data() + off, b.size(), b.data);
    off += b.size();
  }
  if (off != flat.size()) throw DimensionError("Assign: flat vector too long");
}

void ModelParams::SetZero() {
  for (const auto& b : Blocks()) std::fill_n(b.data, b.size(), 0.0);
}

ModelParams InitModel(const ModelConfig& cfg) {
  Rng rng(cfg.init_seed);
  return Build(cfg, &rng);
}

ModelParams ZeroModel(const ModelConfig& cfg) { return Build(cfg, nullptr); }

ParamCountTable CountParams(const ModelConfig& cfg) {
  cfg.Validate();
  const std::size_t d_in = cfg.input_dim, dim = cfg.dim, d_att = cfg.att_dim;
  ParamCountTable t;
  auto add = [&](const char* name, std::size_t n) {
    t.blocks.push_back({name, n});
    t.total += n;
  };
  if (cfg.news_pooling == Pooling::kAttention) {
    add("news.attention", d_att * d_in + 2 * d_att);
  }
  add("news.linear1", dim * d_in + dim);
  add("news.linear2", dim * dim + dim);
  if (cfg.user_pooling == Pooling::kAttention) {
    add("user.attention", d_att * dim + 2 * d_att);
  }
  if (cfg.history_transform == HistoryTransform::kLinearRelu) {
    add("user.transform", dim * dim + dim);
  }
  const std::size_t hidden = cfg.scoring.mlp_hidden;
  switch (cfg.scoring.variant) {
    case ScoringVariant::kInner:
      add("scoring", 0);
      break;
    case ScoringVariant::kBilinear:
      add("scoring", dim * dim);
      break;
    case ScoringVariant::kNonlinear:
      add("scoring", dim * dim + dim);
      break;
    case ScoringVariant::kMlp:
      add("scoring", hidden * 2 * dim + hidden + hidden +
                         (cfg.scoring.mlp_outer_bias ? 1 : 0));
      break;
  }
  return t;
}

}  // namespace newsrec

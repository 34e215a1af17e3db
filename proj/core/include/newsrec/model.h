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

#ifndef NEWSREC_MODEL_H_
#define NEWSREC_MODEL_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "newsrec/encoders.h"
#include "newsrec/numerics.h"
#include "newsrec/scoring.h"

namespace newsrec {

struct ModelConfig {
  int input_dim = 768;  // D, width of the token embeddings
  int dim = 256;        // news and user vector width, hidden width
  int att_dim = 256;    // attention hidden width, both encoders
  Pooling news_pooling = Pooling::kAttention;
  Pooling user_pooling = Pooling::kAttention;
  HistoryTransform history_transform = HistoryTransform::kNone;
  bool final_relu = true;
  ScoringConfig scoring;
  uint64_t init_seed = 7;

  NewsEncoderConfig news_encoder() const { return {news_pooling, final_relu}; }
  UserEncoderConfig user_encoder() const {
    return {user_pooling, history_transform};
  }
  // Throws ConfigError.
  void Validate() const;
};

// Mutable view of one named parameter block, column-major storage.
struct ParamBlock {
  std::string name;
  double* data;
  Eigen::Index rows;
  Eigen::Index cols;

  Eigen::Index size() const { return rows * cols; }
};

struct ModelParams {
  NewsEncoderParams news;
  UserEncoderParams user;
  ScoringParams scoring;

  // Blocks in a fixed order; only allocated blocks are listed.
  std::vector<ParamBlock> Blocks();
  std::size_t NumScalars();
  std::vector<double> Flatten();
  void Assign(std::span<const double> flat);
  void SetZero();
};

// Glorot-uniform matrices and zero biases, drawn from cfg.init_seed.
ModelParams InitModel(const ModelConfig& cfg);
// Same shapes as InitModel, all zeros; used as gradient accumulators.
ModelParams ZeroModel(const ModelConfig& cfg);

struct ParamCount {
  std::string block;
  std::size_t count;
};

struct ParamCountTable {
  std::vector<ParamCount> blocks;  // grouped per module, see CountParams
  std::size_t total = 0;
};

// Analytic count from the configuration alone. Groups: news.attention,
// news.linear1, news.linear2, user.attention, user.transform, scoring.
ParamCountTable CountParams(const ModelConfig& cfg);

}  // namespace newsrec

#endif  // NEWSREC_MODEL_H_

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

#ifndef NEWSREC_ENCODERS_H_
#define NEWSREC_ENCODERS_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "newsrec/numerics.h"

namespace newsrec {

// Additive attention: alpha = softmax_i(q^T tanh(W e_i + b)).
struct AttentionParams {
  Matrix W;  // d_att x d_in
  Vector b;  // d_att
  Vector q;  // d_att

  static AttentionParams Init(Eigen::Index d_att, Eigen::Index d_in, Rng& rng);
  static AttentionParams Zeros(Eigen::Index d_att, Eigen::Index d_in);
};

struct LinearParams {
  Matrix W;
  Vector b;

  static LinearParams Init(Eigen::Index out, Eigen::Index in, Rng& rng);
  static LinearParams Zeros(Eigen::Index out, Eigen::Index in);
};

struct AttentionCache {
  Matrix hidden;  // tanh(E W^T + b), L x d_att
  Vector weights;
};

struct AttentionOutput {
  Vector pooled;
  Vector weights;
};

// `inputs` is L x d_in, one item per row. Throws EmptyInputError for L = 0
// and DimensionError when d_in does not match W.
AttentionOutput AdditiveAttention(const Matrix& inputs, const AttentionParams& p,
                                  AttentionCache* cache = nullptr);

// Accumulates parameter gradients into `grads` and, when `d_inputs` is
// non-null, writes the gradient w.r.t. the inputs.
void AdditiveAttentionBackward(const Matrix& inputs, const AttentionParams& p,
                               const AttentionCache& cache,
                               const Vector& d_pooled, AttentionParams& grads,
                               Matrix* d_inputs);

enum class Pooling { kAttention, kMean };
enum class HistoryTransform { kNone, kLinearRelu };

std::string_view PoolingName(Pooling p);
Pooling ParsePooling(std::string_view name, const std::string& field);
std::string_view HistoryTransformName(HistoryTransform t);
HistoryTransform ParseHistoryTransform(std::string_view name,
                                       const std::string& field);

struct NewsEncoderConfig {
  Pooling pooling = Pooling::kAttention;
  bool final_relu = true;
};

// Pooling over token embeddings followed by two linear layers.
struct NewsEncoderParams {
  std::optional<AttentionParams> att;  // present iff pooling = attention
  LinearParams l1;                     // dim x D
  LinearParams l2;                     // dim x dim
};

struct NewsEncoderCache {
  AttentionCache att;
  Vector pooled;
  Vector z1, h1, z2;
};

// n = relu(W2 relu(W1 pool(E) + b1) + b2); the outer relu is dropped when
// final_relu is false.
Vector EncodeNews(const Matrix& tokens, const NewsEncoderParams& p,
                  const NewsEncoderConfig& cfg,
                  NewsEncoderCache* cache = nullptr);

// Token embeddings are frozen, so only parameter gradients are produced.
void EncodeNewsBackward(const Matrix& tokens, const NewsEncoderParams& p,
                        const NewsEncoderConfig& cfg,
                        const NewsEncoderCache& cache, const Vector& d_news,
                        NewsEncoderParams& grads);

struct UserEncoderConfig {
  Pooling pooling = Pooling::kAttention;
  HistoryTransform transform = HistoryTransform::kNone;
};

struct UserEncoderParams {
  std::optional<AttentionParams> att;      // present iff pooling = attention
  std::optional<LinearParams> transform;   // present iff linear_relu
};

struct UserEncoderCache {
  Matrix pre;        // H T^T + b_T (transform only)
  Matrix transformed;
  AttentionCache att;
};

// `history` holds one news vector per row, oldest first. Optionally maps each
// row through relu(T h + b_T), then pools. Throws EmptyInputError on an empty
// history.
Vector EncodeUser(const Matrix& history, const UserEncoderParams& p,
                  const UserEncoderConfig& cfg,
                  UserEncoderCache* cache = nullptr);
Vector EncodeUser(const std::vector<Vector>& history,
                  const UserEncoderParams& p, const UserEncoderConfig& cfg);

void EncodeUserBackward(const Matrix& history, const UserEncoderParams& p,
                        const UserEncoderConfig& cfg,
                        const UserEncoderCache& cache, const Vector& d_user,
                        UserEncoderParams& grads, Matrix& d_history);

// Mean pooling over rows.
Vector MeanRows(const Matrix& rows);

}  // namespace newsrec

#endif  // NEWSREC_ENCODERS_H_

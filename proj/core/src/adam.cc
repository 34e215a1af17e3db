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

#include "newsrec/adam.h"

#include <cmath>

#include "newsrec/errors.h"

namespace newsrec {

void Adam::Step(std::span<const ParamBlock> params,
                std::span<const ParamBlock> grads) {
  if (params.size() != grads.size()) {
    throw DimensionError("adam: " + std::to_string(params.size()) +
                         " parameter blocks but " +
                         std::to_string(grads.size()) + " gradient blocks");
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (params[i].rows != grads[i].rows || params[i].cols != grads[i].cols) {
      throw DimensionError("adam: gradient for block '" + params[i].name +
                           "' has shape [" + std::to_string(grads[i].rows) +
                           "x" + std::to_string(grads[i].cols) + "], expected [" +
                           std::to_string(params[i].rows) + "x" +
                           std::to_string(params[i].cols) + "]");
    }
    for (Eigen::Index k = 0; k < grads[i].size(); ++k) {
      if (!std::isfinite(grads[i].data[k])) {
        throw NonFiniteError("adam: non-finite gradient in block '" +
                             params[i].name + "'");
      }
    }
  }
  if (m_.empty()) {
    for (const auto& p : params) {
      m_.push_back(Vector::Zero(p.size()));
      v_.push_back(Vector::Zero(p.size()));
    }
  } else if (m_.size() != params.size()) {
    throw DimensionError("adam: block layout changed between steps");
  }

  ++t_;
  const double bc1 = 1.0 - std::pow(cfg_.beta1, static_cast<double>(t_));
  const double bc2 = 1.0 - std::pow(cfg_.beta2, static_cast<double>(t_));
  for (std::size_t i = 0; i < params.size(); ++i) {
    Eigen::Map<Vector> theta(params[i].data, params[i].size());
    Eigen::Map<const Vector> g(grads[i].data, grads[i].size());
    m_[i] = cfg_.beta1 * m_[i] + (1.0 - cfg_.beta1) * g;
    v_[i] = cfg_.beta2 * v_[i] + (1.0 - cfg_.beta2) * g.cwiseAbs2();
    theta.array() -= cfg_.lr * (m_[i].array() / bc1) /
                     ((v_[i].array() / bc2).sqrt() + cfg_.eps);
  }
}

}  // namespace newsrec

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

#ifndef NEWSREC_ADAM_H_
#define NEWSREC_ADAM_H_

#include <cstdint>
#include <span>
#include <vector>

#include "newsrec/model.h"

namespace newsrec {

struct AdamConfig {
  double lr = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// Adam with bias correction. Moment buffers are allocated on the first step
// and keyed by block position; later steps must pass the same block layout.
class Adam {
 public:
  explicit Adam(AdamConfig cfg = {}) : cfg_(cfg) {}

  // Throws NonFiniteError naming the first block with a NaN/inf gradient
  // (nothing is updated in that case) and DimensionError on layout mismatch.
  void Step(std::span<const ParamBlock> params,
            std::span<const ParamBlock> grads);

  int64_t step() const { return t_; }
  const AdamConfig& config() const { return cfg_; }

 private:
  AdamConfig cfg_;
  int64_t t_ = 0;
  std::vector<Vector> m_;
  std::vector<Vector> v_;
};

}  // namespace newsrec

#endif  // NEWSREC_ADAM_H_

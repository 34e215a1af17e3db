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

#include <vector>

#include <benchmark/benchmark.h>

#include "newsrec/dominance.h"
#include "newsrec/encoders.h"
#include "newsrec/metrics.h"
#include "newsrec/model.h"
#include "newsrec/random.h"
#include "newsrec/scoring.h"

namespace newsrec {
namespace {

Matrix Tokens(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = StandardNormal(rng);
  }
  return m;
}

// args: input width D, title length L.
void BM_EncodeNews(benchmark::State& state) {
  ModelConfig cfg;
  cfg.input_dim = static_cast<int>(state.range(0));
  const ModelParams p = InitModel(cfg);
  Rng rng(1);
  const Matrix e = Tokens(state.range(1), cfg.input_dim, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(EncodeNews(e, p.news, cfg.news_encoder()));
  }
}
BENCHMARK(BM_EncodeNews)->Args({64, 10})->Args({768, 30});

void BM_Score(benchmark::State& state) {
  ScoringConfig cfg;
  cfg.variant = static_cast<ScoringVariant>(state.range(0));
  Rng rng(2);
  const Eigen::Index dim = 256;
  const ScoringParams p = ScoringParams::Init(cfg, dim, rng);
  const Vector u = Tokens(dim, 1, rng).col(0), c = Tokens(dim, 1, rng).col(0);
  for (auto _ : state) benchmark::DoNotOptimize(Score(cfg, p, u, c));
  state.SetLabel(std::string(ScoringName(cfg.variant)));
}
BENCHMARK(BM_Score)->DenseRange(0, 3);

void BM_Auc(benchmark::State& state) {
  Rng rng(3);
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<double> scores(n);
  std::vector<char> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    scores[i] = UniformUnit(rng);
    labels[i] = static_cast<char>(i % 5 == 0);
  }
  for (auto _ : state) benchmark::DoNotOptimize(Auc(scores, labels));
}
BENCHMARK(BM_Auc)->Arg(20)->Arg(300);

void BM_EpsilonHat(benchmark::State& state) {
  Rng rng(4);
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = StandardNormal(rng);
    y[i] = StandardNormal(rng) + 0.1;
  }
  for (auto _ : state) benchmark::DoNotOptimize(EpsilonHat(x, y));
}
BENCHMARK(BM_EpsilonHat)->Arg(2000)->Arg(20000);

}  // namespace
}  // namespace newsrec
BENCHMARK_MAIN();

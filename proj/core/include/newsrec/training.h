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

#ifndef NEWSREC_TRAINING_H_
#define NEWSREC_TRAINING_H_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "newsrec/corpus.h"
#include "newsrec/embeddings.h"
#include "newsrec/model.h"
#include "newsrec/random.h"

namespace newsrec {

struct TrainConfig {
  int negatives = 4;  // K
  int batch_size = 64;
  double lr = 1e-4;
  int epochs = 5;
  int history_cap = 25;  // T, most recent items kept
  uint64_t seed = 42;
  int log_every = 100;  // batches

  void Validate() const;
};

// One clicked candidate (first) and K non-clicked ones from the same session.
struct TrainSample {
  std::string session_id;
  std::vector<std::string> history;     // at most T ids, oldest first
  std::vector<std::string> candidates;  // 1 + K ids
  std::vector<char> labels;             // 1 for the clicked candidate
};

// The most recent `cap` ids of a history.
std::vector<std::string> TruncateHistory(const std::vector<std::string>& history,
                                         int cap);

// One sample per clicked candidate. Negatives are drawn without replacement
// from the non-clicked candidates; when fewer than K exist, the shortfall is
// filled by drawing with replacement. Returns nothing for sessions without a
// click or without a non-click.
std::vector<TrainSample> DrawSamples(const Session& session, int negatives,
                                     int history_cap, Rng& rng);

// Mean binary cross-entropy over the candidates; scores are clamped to
// [1e-12, 1 - 1e-12].
double BceLoss(std::span<const double> scores, std::span<const char> labels);

// Frozen token embeddings for every news item of a table, indexed like the
// table.
class NewsFeatures {
 public:
  NewsFeatures(const NewsTable& news, const EmbeddingProvider& provider);

  const NewsTable& news() const { return *news_; }
  int dim() const { return dim_; }
  Matrix Tokens(std::size_t index) const {
    return tokens_[index].cast<double>();
  }
  std::size_t Index(std::string_view id) const;  // throws MissingIdError

 private:
  const NewsTable* news_;
  int dim_;
  std::vector<EmbeddingMatrix> tokens_;
};

// Sample resolved to news indices.
struct IndexedSample {
  std::vector<std::size_t> history;
  std::vector<std::size_t> candidates;
  std::vector<char> labels;
};

IndexedSample Resolve(const TrainSample& sample, const NewsFeatures& features);

// Mean over samples of the per-sample mean BCE (computed from logits). When
// `grads` is non-null it receives the gradient of that mean; it must have
// the model's block layout and is overwritten.
double BatchLoss(const ModelConfig& cfg, const ModelParams& params,
                 const NewsFeatures& features,
                 std::span<const IndexedSample> batch, ModelParams* grads);

struct TrainLogEntry {
  int epoch = 0;
  int batch = 0;  // 1-based index of the last batch covered
  double mean_loss = 0.0;
  double wall_ms = 0.0;
};

struct TrainStats {
  std::size_t cold_start_skipped = 0;
  std::size_t no_negative_skipped = 0;
  std::size_t no_click_skipped = 0;
  std::size_t samples_per_epoch = 0;
};

struct TrainResult {
  ModelParams params;
  std::vector<TrainLogEntry> log;
  std::vector<double> epoch_mean_loss;
  TrainStats stats;
};

using TrainLogSink = std::function<void(const TrainLogEntry&)>;

// Negative-sampling BCE training with Adam. Cold-start sessions are skipped.
// Each epoch redraws the negatives and reshuffles the samples from a seed
// derived from (cfg.seed, epoch). Throws NonFiniteError with a dump of the
// offending batch if the loss diverges.
TrainResult Train(const Corpus& corpus, const EmbeddingProvider& provider,
                  const ModelConfig& model_cfg, const TrainConfig& cfg,
                  const TrainLogSink& sink = {});

}  // namespace newsrec

#endif  // NEWSREC_TRAINING_H_

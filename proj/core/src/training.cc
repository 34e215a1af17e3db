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

#include "newsrec/training.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "newsrec/adam.h"
#include "newsrec/errors.h"

namespace newsrec {

void TrainConfig::Validate() const {
  if (negatives < 1) throw ConfigError("train.K", "must be at least 1");
  if (batch_size < 1) throw ConfigError("train.batch_size", "must be positive");
  if (!(lr >= 0.0) || !std::isfinite(lr)) {
    throw ConfigError("train.lr", "must be a finite non-negative real");
  }
  if (epochs < 1) throw ConfigError("train.epochs", "must be positive");
  if (history_cap < 1) throw ConfigError("train.T", "must be positive");
  if (log_every < 1) throw ConfigError("train.log_every", "must be positive");
}

std::vector<std::string> TruncateHistory(const std::vector<std::string>& history,
                                         int cap) {
  const std::size_t keep = std::min<std::size_t>(history.size(), cap);
  return {history.end() - static_cast<std::ptrdiff_t>(keep), history.end()};
}

std::vector<TrainSample> DrawSamples(const Session& session, int negatives,
                                     int history_cap, Rng& rng) {
  std::vector<std::string> clicked, skipped;
  for (const auto& imp : session.shown) {
    (imp.clicked ? clicked : skipped).push_back(imp.news_id);
  }
  std::vector<TrainSample> samples;
  if (clicked.empty() || skipped.empty()) return samples;
  const auto history = TruncateHistory(session.history, history_cap);
  for (const auto& positive : clicked) {
    TrainSample s;
    s.session_id = session.session_id;
    s.history = history;
    s.candidates.push_back(positive);
    s.labels.push_back(1);
    // Partial Fisher-Yates over the non-clicked pool.
    std::vector<std::string> pool = skipped;
    const std::size_t distinct = std::min<std::size_t>(pool.size(), negatives);
    for (std::size_t i = 0; i < distinct; ++i) {
      const std::size_t j = i + UniformIndex(rng, pool.size() - i);
      std::swap(pool[i], pool[j]);
      s.candidates.push_back(pool[i]);
      s.labels.push_back(0);
    }
    for (std::size_t i = distinct; i < static_cast<std::size_t>(negatives); ++i) {
      s.candidates.push_back(skipped[UniformIndex(rng, skipped.size())]);
      s.labels.push_back(0);
    }
    samples.push_back(std::move(s));
  }
  return samples;
}

double BceLoss(std::span<const double> scores, std::span<const char> labels) {
  if (scores.size() != labels.size() || scores.empty()) {
    throw DimensionError("bce: " + std::to_string(scores.size()) +
                         " scores vs " + std::to_string(labels.size()) +
                         " labels");
  }
  constexpr double kClamp = 1e-12;
  double total = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const double s = std::clamp(scores[i], kClamp, 1.0 - kClamp);
    total -= labels[i] ? std::log(s) : std::log1p(-s);
  }
  return total / static_cast<double>(scores.size());
}

NewsFeatures::NewsFeatures(const NewsTable& news,
                           const EmbeddingProvider& provider)
    : news_(&news), dim_(provider.dim()) {
  tokens_.reserve(news.size());
  for (const auto& item : news) tokens_.push_back(provider.Embed(item));
}

std::size_t NewsFeatures::Index(std::string_view id) const {
  const std::size_t i = news_->IndexOf(id);
  if (i == NewsTable::npos) {
    throw MissingIdError("unknown news id '" + std::string(id) + "'");
  }
  return i;
}

IndexedSample Resolve(const TrainSample& sample, const NewsFeatures& features) {
  IndexedSample out;
  for (const auto& id : sample.history) out.history.push_back(features.Index(id));
  for (const auto& id : sample.candidates) {
    out.candidates.push_back(features.Index(id));
  }
  out.labels = sample.labels;
  return out;
}

double BatchLoss(const ModelConfig& cfg, const ModelParams& params,
                 const NewsFeatures& features,
                 std::span<const IndexedSample> batch, ModelParams* grads) {
  if (batch.empty()) return 0.0;
  const NewsEncoderConfig news_cfg = cfg.news_encoder();
  const UserEncoderConfig user_cfg = cfg.user_encoder();

  // Encode every distinct news item of the batch once.
  std::unordered_map<std::size_t, std::size_t> slot_of;
  std::vector<std::size_t> slots;
  auto slot = [&](std::size_t news) {
    const auto [it, inserted] = slot_of.emplace(news, slots.size());
    if (inserted) slots.push_back(news);
    return it->second;
  };
  for (const auto& s : batch) {
    for (auto h : s.history) slot(h);
    for (auto c : s.candidates) slot(c);
  }
  std::vector<Matrix> tokens(slots.size());
  std::vector<NewsEncoderCache> news_cache(slots.size());
  std::vector<Vector> news_vec(slots.size());
  for (std::size_t i = 0; i < slots.size(); ++i) {
    tokens[i] = features.Tokens(slots[i]);
    news_vec[i] = EncodeNews(tokens[i], params.news, news_cfg, &news_cache[i]);
  }

  const double inv_batch = 1.0 / static_cast<double>(batch.size());
  std::vector<Vector> d_news;
  if (grads != nullptr) {
    grads->SetZero();
    d_news.assign(slots.size(), Vector::Zero(cfg.dim));
  }

  double total = 0.0;
  UserEncoderCache user_cache;
  ScoringCache score_cache;
  Matrix history;
  Matrix d_history;
  for (const auto& s : batch) {
    history.resize(static_cast<Eigen::Index>(s.history.size()), cfg.dim);
    for (std::size_t t = 0; t < s.history.size(); ++t) {
      history.row(t) = news_vec[slot_of.at(s.history[t])].transpose();
    }
    const Vector user = EncodeUser(history, params.user, user_cfg, &user_cache);
    Vector d_user = Vector::Zero(cfg.dim);
    const double inv_cands = 1.0 / static_cast<double>(s.candidates.size());
    double sample_loss = 0.0;
    for (std::size_t j = 0; j < s.candidates.size(); ++j) {
      const std::size_t cs = slot_of.at(s.candidates[j]);
      const double y = s.labels[j] ? 1.0 : 0.0;
      const double logit = ScoreLogit(cfg.scoring, params.scoring, user,
                                      news_vec[cs], &score_cache);
      // -[y log s + (1 - y) log(1 - s)] with s = sigmoid(logit)
      sample_loss += num::Softplus(logit) - y * logit;
      if (grads != nullptr) {
        const double d_logit = (num::Sigmoid(logit) - y) * inv_cands * inv_batch;
        ScoreLogitBackward(cfg.scoring, params.scoring, user, news_vec[cs],
                           score_cache, d_logit, grads->scoring, d_user,
                           d_news[cs]);
      }
    }
    total += sample_loss * inv_cands;
    if (grads != nullptr) {
      EncodeUserBackward(history, params.user, user_cfg, user_cache, d_user,
                         grads->user, d_history);
      for (std::size_t t = 0; t < s.history.size(); ++t) {
        d_news[slot_of.at(s.history[t])] += d_history.row(t).transpose();
      }
    }
  }

  if (grads != nullptr) {
    for (std::size_t i = 0; i < slots.size(); ++i) {
      EncodeNewsBackward(tokens[i], params.news, news_cfg, news_cache[i],
                         d_news[i], grads->news);
    }
  }
  return total * inv_batch;
}

namespace {

std::string DumpBatch(std::span<const TrainSample> batch) {
  nlohmann::json dump = nlohmann::json::array();
  for (const auto& s : batch) {
    dump.push_back({{"session_id", s.session_id},
                    {"history", s.history},
                    {"candidates", s.candidates},
                    {"labels", std::vector<int>(s.labels.begin(), s.labels.end())}});
  }
  return dump.dump();
}

}  // namespace

TrainResult Train(const Corpus& corpus, const EmbeddingProvider& provider,
                  const ModelConfig& model_cfg, const TrainConfig& cfg,
                  const TrainLogSink& sink) {
  cfg.Validate();
  model_cfg.Validate();
  if (provider.dim() != model_cfg.input_dim) {
    throw ConfigError("model.input_dim",
                      "embedding provider has dim " +
                          std::to_string(provider.dim()) + ", model expects " +
                          std::to_string(model_cfg.input_dim));
  }
  const auto start = std::chrono::steady_clock::now();
  const NewsFeatures features(corpus.news, provider);

  TrainResult result;
  result.params = InitModel(model_cfg);
  ModelParams grads = ZeroModel(model_cfg);
  Adam adam(AdamConfig{.lr = cfg.lr});
  const auto param_blocks = result.params.Blocks();
  const auto grad_blocks = grads.Blocks();

  for (const auto& s : corpus.train_sessions) {
    if (s.cold_start()) {
      ++result.stats.cold_start_skipped;
    } else if (s.num_clicked() == 0) {
      ++result.stats.no_click_skipped;
    } else if (s.num_clicked() == s.shown.size()) {
      ++result.stats.no_negative_skipped;
    }
  }

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    Rng rng(DeriveSeed(cfg.seed, static_cast<uint64_t>(epoch)));
    std::vector<TrainSample> samples;
    for (const auto& s : corpus.train_sessions) {
      if (s.cold_start()) continue;
      auto drawn = DrawSamples(s, cfg.negatives, cfg.history_cap, rng);
      std::move(drawn.begin(), drawn.end(), std::back_inserter(samples));
    }
    Shuffle(samples.begin(), samples.end(), rng);
    std::vector<IndexedSample> indexed;
    indexed.reserve(samples.size());
    for (const auto& s : samples) indexed.push_back(Resolve(s, features));
    result.stats.samples_per_epoch = samples.size();

    double epoch_sum = 0.0, window_sum = 0.0;
    int window = 0, batches = 0;
    for (std::size_t begin = 0; begin < indexed.size(); begin += cfg.batch_size) {
      const std::size_t end = std::min(indexed.size(), begin + cfg.batch_size);
      const std::span<const IndexedSample> batch(indexed.data() + begin, end - begin);
      const double loss = BatchLoss(model_cfg, result.params, features, batch, &grads);
      if (!std::isfinite(loss)) {
        throw NonFiniteError(
            "non-finite loss at epoch " + std::to_string(epoch + 1) + " batch " +
            std::to_string(batches + 1) + "; batch: " +
            DumpBatch(std::span<const TrainSample>(samples.data() + begin, end - begin)));
      }
      adam.Step(param_blocks, grad_blocks);
      ++batches;
      epoch_sum += loss;
      window_sum += loss;
      ++window;
      const bool last = end == indexed.size();
      if (window == cfg.log_every || last) {
        TrainLogEntry entry;
        entry.epoch = epoch + 1;
        entry.batch = batches;
        entry.mean_loss = window_sum / window;
        entry.wall_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - start)
                            .count();
        result.log.push_back(entry);
        if (sink) sink(entry);
        window_sum = 0.0;
        window = 0;
      }
    }
    result.epoch_mean_loss.push_back(batches > 0 ? epoch_sum / batches : 0.0);
  }
  return result;
}

}  // namespace newsrec

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

#ifndef NEWSREC_CONFIG_H_
#define NEWSREC_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "newsrec/model.h"
#include "newsrec/synthetic.h"
#include "newsrec/training.h"

namespace newsrec {

enum class CorpusKind { kSynth, kMind, kDump };
enum class EmbeddingKind { kHashed, kNemb };

struct CorpusSource {
  CorpusKind kind = CorpusKind::kSynth;
  SynthConfig synth;
  std::filesystem::path mind_train_dir;
  std::filesystem::path mind_dev_dir;
  std::filesystem::path dump_dir;
};

struct EmbeddingSource {
  EmbeddingKind kind = EmbeddingKind::kHashed;
  int dim = 768;
  uint64_t seed = 0;
  int max_tokens = 30;
  std::filesystem::path path;
};

// Experiment configuration. Stored as a flat object of dotted keys
// ("model.scoring": "bilinear"); nested JSON objects are flattened on load,
// so {"model": {"scoring": "bilinear"}} is equivalent. Unknown keys and
// mistyped values are rejected with the key as the field path.
struct ExperimentConfig {
  CorpusSource corpus;
  EmbeddingSource embeddings;
  ModelConfig model;
  TrainConfig train;
  uint64_t eval_seed = 123;
  int hist_bins = 50;
  std::filesystem::path output_dir = "out";

  // Every key with its value, including defaults; keys sorted.
  nlohmann::json flat;

  static nlohmann::json Defaults();
  static ExperimentConfig FromJson(const nlohmann::json& json);
  static ExperimentConfig FromFile(const std::filesystem::path& path);

  // Applies "key=value" (leading dashes allowed). The value is parsed as
  // JSON when possible, otherwise taken as a string.
  void Override(std::string_view assignment);
  // Applies several overrides and validates once, so their order does not
  // matter. On error the configuration is left unchanged.
  void ApplyOverrides(const std::vector<std::string>& assignments);
  void Set(const std::string& key, const nlohmann::json& value);

  // FNV-1a of the canonical dump of every key that shapes the trained
  // parameters (everything except eval.* and output.*).
  uint64_t ParamsHash() const;

 private:
  void Rebuild();
};

// Nested objects become dotted keys; arrays and scalars are leaves.
nlohmann::json FlattenJson(const nlohmann::json& json);

}  // namespace newsrec

#endif  // NEWSREC_CONFIG_H_

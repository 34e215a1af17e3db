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

#include "newsrec/config.h"

#include <fstream>

#include "newsrec/errors.h"
#include "newsrec/random.h"

namespace newsrec {
namespace {

using nlohmann::json;

void FlattenInto(const json& j, const std::string& prefix, json& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      FlattenInto(value, prefix.empty() ? key : prefix + "." + key, out);
    }
  } else {
    out[prefix] = j;
  }
}

bool SameKind(const json& want, const json& got) {
  if (want.is_boolean()) return got.is_boolean();
  if (want.is_number_integer()) {
    return got.is_number_integer() ||
           (got.is_number_float() && got.get<double>() == std::floor(got.get<double>()));
  }
  if (want.is_number()) return got.is_number();
  if (want.is_string()) return got.is_string();
  return want.type() == got.type();
}

const char* KindName(const json& j) {
  if (j.is_boolean()) return "a boolean";
  if (j.is_number_integer()) return "an integer";
  if (j.is_number()) return "a number";
  if (j.is_string()) return "a string";
  return "a value";
}

int GetInt(const json& flat, const char* key) {
  const auto v = flat.at(key).get<double>();
  if (v < -2147483648.0 || v > 2147483647.0) throw ConfigError(key, "out of range");
  return static_cast<int>(v);
}

uint64_t GetSeed(const json& flat, const char* key) {
  const json& v = flat.at(key);
  if (v.is_number_unsigned()) return v.get<uint64_t>();
  const auto i = v.get<int64_t>();
  if (i < 0) throw ConfigError(key, "must be non-negative");
  return static_cast<uint64_t>(i);
}

std::string GetString(const json& flat, const char* key) {
  return flat.at(key).get<std::string>();
}

}  // namespace

json FlattenJson(const json& j) {
  json out = json::object();
  FlattenInto(j, "", out);
  return out;
}

json ExperimentConfig::Defaults() {
  return json{
      {"corpus.source", "synth"},
      {"corpus.mind.train_dir", ""},
      {"corpus.mind.dev_dir", ""},
      {"corpus.dump_dir", ""},
      {"synth.n_users", 200},
      {"synth.n_news", 2000},
      {"synth.n_sessions", 2000},
      {"synth.candidates_per_session", 20},
      {"synth.latent_dim", 8},
      {"synth.interaction", "permutation"},
      {"synth.noise_std", 0.0},
      {"synth.seed", 1},
      {"synth.history_len", 10},
      {"synth.history_pool", 50},
      {"embeddings.source", "hashed"},
      {"embeddings.dim", 768},
      {"embeddings.seed", 0},
      {"embeddings.max_tokens", 30},
      {"embeddings.path", ""},
      {"model.news_encoder", "attention"},
      {"model.user_encoder", "attention"},
      {"model.history_transform", "none"},
      {"model.scoring", "inner"},
      {"model.activation", "relu"},
      {"model.final_relu", true},
      {"model.dim", 256},
      {"model.att_dim", 256},
      {"model.mlp_hidden", 128},
      {"model.mlp_outer_bias", false},
      {"model.init_seed", 7},
      {"train.K", 4},
      {"train.batch_size", 64},
      {"train.lr", 1e-4},
      {"train.epochs", 5},
      {"train.T", 25},
      {"train.seed", 42},
      {"train.log_every", 100},
      {"eval.seed", 123},
      {"eval.hist_bins", 50},
      {"output.dir", "out"},
  };
}

ExperimentConfig ExperimentConfig::FromJson(const json& j) {
  if (!j.is_object()) throw ConfigError("<root>", "config must be a JSON object");
  ExperimentConfig cfg;
  cfg.flat = Defaults();
  const json flattened = FlattenJson(j);
  for (const auto& [key, value] : flattened.items()) cfg.Set(key, value);
  cfg.Rebuild();
  return cfg;
}

ExperimentConfig ExperimentConfig::FromFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<file>", "cannot open '" + path.string() + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("<file>", std::string("invalid JSON: ") + e.what());
  }
  return FromJson(j);
}

void ExperimentConfig::Set(const std::string& key, const json& value) {
  if (!flat.contains(key)) throw ConfigError(key, "unknown configuration key");
  const json& want = flat.at(key);
  if (!SameKind(want, value)) {
    throw ConfigError(key, std::string("expected ") + KindName(want));
  }
  flat[key] = want.is_number_integer() && value.is_number_float()
                  ? json(static_cast<int64_t>(value.get<double>()))
                  : value;
}

void ExperimentConfig::Override(std::string_view assignment) {
  ApplyOverrides({std::string(assignment)});
}

void ExperimentConfig::ApplyOverrides(const std::vector<std::string>& assignments) {
  const json saved = flat;
  try {
    for (std::string_view a : assignments) {
      while (!a.empty() && a.front() == '-') a.remove_prefix(1);
      const auto eq = a.find('=');
      if (eq == std::string_view::npos) {
        throw ConfigError(std::string(a), "override must be key=value");
      }
      const std::string key(a.substr(0, eq));
      const std::string text(a.substr(eq + 1));
      json value = json::parse(text, nullptr, /*allow_exceptions=*/false);
      if (value.is_discarded()) value = text;
      // A string-typed key keeps the raw text ("--model.scoring=bilinear").
      if (flat.contains(key) && flat.at(key).is_string() && !value.is_string()) {
        value = text;
      }
      Set(key, value);
    }
    Rebuild();
  } catch (...) {
    flat = saved;
    Rebuild();
    throw;
  }
}

void ExperimentConfig::Rebuild() {
  const json& f = flat;

  const auto source = GetString(f, "corpus.source");
  if (source == "synth") {
    corpus.kind = CorpusKind::kSynth;
  } else if (source == "mind") {
    corpus.kind = CorpusKind::kMind;
  } else if (source == "dump") {
    corpus.kind = CorpusKind::kDump;
  } else {
    throw ConfigError("corpus.source", "expected synth|mind|dump, got '" + source + "'");
  }
  corpus.mind_train_dir = GetString(f, "corpus.mind.train_dir");
  corpus.mind_dev_dir = GetString(f, "corpus.mind.dev_dir");
  corpus.dump_dir = GetString(f, "corpus.dump_dir");
  if (corpus.kind == CorpusKind::kMind &&
      (corpus.mind_train_dir.empty() || corpus.mind_dev_dir.empty())) {
    throw ConfigError("corpus.mind.train_dir",
                      "mind source needs corpus.mind.train_dir and corpus.mind.dev_dir");
  }
  if (corpus.kind == CorpusKind::kDump && corpus.dump_dir.empty()) {
    throw ConfigError("corpus.dump_dir", "dump source needs a directory");
  }

  SynthConfig& s = corpus.synth;
  s.n_users = GetInt(f, "synth.n_users");
  s.n_news = GetInt(f, "synth.n_news");
  s.n_sessions = GetInt(f, "synth.n_sessions");
  s.candidates_per_session = GetInt(f, "synth.candidates_per_session");
  s.latent_dim = GetInt(f, "synth.latent_dim");
  s.interaction = ParseInteraction(GetString(f, "synth.interaction"));
  s.noise_std = f.at("synth.noise_std").get<double>();
  s.seed = GetSeed(f, "synth.seed");
  s.history_len = GetInt(f, "synth.history_len");
  s.history_pool = GetInt(f, "synth.history_pool");
  if (corpus.kind == CorpusKind::kSynth) s.Validate();

  const auto emb = GetString(f, "embeddings.source");
  if (emb == "hashed") {
    embeddings.kind = EmbeddingKind::kHashed;
  } else if (emb == "nemb") {
    embeddings.kind = EmbeddingKind::kNemb;
  } else {
    throw ConfigError("embeddings.source", "expected hashed|nemb, got '" + emb + "'");
  }
  embeddings.dim = GetInt(f, "embeddings.dim");
  embeddings.seed = GetSeed(f, "embeddings.seed");
  embeddings.max_tokens = GetInt(f, "embeddings.max_tokens");
  embeddings.path = GetString(f, "embeddings.path");
  if (embeddings.dim <= 0) throw ConfigError("embeddings.dim", "must be positive");
  if (embeddings.max_tokens <= 0) {
    throw ConfigError("embeddings.max_tokens", "must be positive");
  }
  if (embeddings.kind == EmbeddingKind::kNemb && embeddings.path.empty()) {
    throw ConfigError("embeddings.path", "nemb source needs a path");
  }

  model.input_dim = embeddings.dim;
  model.news_pooling = ParsePooling(GetString(f, "model.news_encoder"), "model.news_encoder");
  model.user_pooling = ParsePooling(GetString(f, "model.user_encoder"), "model.user_encoder");
  model.history_transform = ParseHistoryTransform(
      GetString(f, "model.history_transform"), "model.history_transform");
  model.scoring.variant = ParseScoring(GetString(f, "model.scoring"), "model.scoring");
  model.scoring.activation =
      ParseActivation(GetString(f, "model.activation"), "model.activation");
  model.scoring.mlp_hidden = GetInt(f, "model.mlp_hidden");
  model.scoring.mlp_outer_bias = f.at("model.mlp_outer_bias").get<bool>();
  model.final_relu = f.at("model.final_relu").get<bool>();
  model.dim = GetInt(f, "model.dim");
  model.att_dim = GetInt(f, "model.att_dim");
  model.init_seed = GetSeed(f, "model.init_seed");
  model.Validate();

  train.negatives = GetInt(f, "train.K");
  train.batch_size = GetInt(f, "train.batch_size");
  train.lr = f.at("train.lr").get<double>();
  train.epochs = GetInt(f, "train.epochs");
  train.history_cap = GetInt(f, "train.T");
  train.seed = GetSeed(f, "train.seed");
  train.log_every = GetInt(f, "train.log_every");
  train.Validate();

  eval_seed = GetSeed(f, "eval.seed");
  hist_bins = GetInt(f, "eval.hist_bins");
  if (hist_bins < 1) throw ConfigError("eval.hist_bins", "must be positive");
  output_dir = GetString(f, "output.dir");
  if (output_dir.empty()) throw ConfigError("output.dir", "must be non-empty");
}

uint64_t ExperimentConfig::ParamsHash() const {
  json relevant = json::object();
  for (const auto& [key, value] : flat.items()) {
    if (key.rfind("eval.", 0) == 0 || key.rfind("output.", 0) == 0) continue;
    relevant[key] = value;
  }
  return Hash64(relevant.dump(), 0);
}

}  // namespace newsrec

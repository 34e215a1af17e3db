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

#ifndef NEWSREC_TOOLS_COMMANDS_H_
#define NEWSREC_TOOLS_COMMANDS_H_

#include <filesystem>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "newsrec/config.h"
#include "newsrec/corpus.h"
#include "newsrec/dominance.h"
#include "newsrec/embeddings.h"
#include "newsrec/evaluation.h"
#include "newsrec/model.h"

namespace newsrec::cli {

// Exclusive advisory lock on <dir>/.lock, held for the object's lifetime.
// Creates the directory. Throws Error when another run holds the lock.
class DirLock {
 public:
  explicit DirLock(const std::filesystem::path& dir);
  ~DirLock();
  DirLock(const DirLock&) = delete;
  DirLock& operator=(const DirLock&) = delete;

 private:
  int fd_ = -1;
};

Corpus LoadConfiguredCorpus(const ExperimentConfig& cfg);

// For nemb sources the store's width must equal embeddings.dim.
std::unique_ptr<EmbeddingProvider> MakeProvider(const ExperimentConfig& cfg);

void WriteJsonFile(const std::filesystem::path& path, const nlohmann::json& j);

// Each command writes its artifacts under cfg.output_dir and reports
// progress on `log`.
void CmdSynth(const ExperimentConfig& cfg, std::ostream& log);
void CmdTrain(const ExperimentConfig& cfg, std::ostream& log);
MetricsReport CmdEval(const ExperimentConfig& cfg,
                      const std::filesystem::path& checkpoint, std::ostream& log);
ParamCountTable CmdCountParams(const ExperimentConfig& cfg, std::ostream& out);

struct CompareOptions {
  std::filesystem::path a;
  std::filesystem::path b;
  double epsilon = 0.33;
  double alpha = 0.01;
  int bootstrap = kDefaultBootstrap;
  uint64_t seed = 0;
  std::filesystem::path out;  // empty: stdout only
};
DominanceReport CmdCompare(const CompareOptions& opts, std::ostream& out);

nlohmann::json CmdGrid(const ExperimentConfig& cfg,
                       const std::vector<std::string>& scorings,
                       std::ostream& log);

}  // namespace newsrec::cli

#endif  // NEWSREC_TOOLS_COMMANDS_H_

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

#include "commands.h"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "newsrec/checkpoint.h"
#include "newsrec/errors.h"
#include "newsrec/synthetic.h"
#include "newsrec/training.h"

namespace newsrec::cli {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string UtcNow() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

std::ofstream OpenOut(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  return out;
}

std::string Hex(uint64_t v) {
  char buf[19];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// Run bookkeeping that is allowed to differ between identical runs.
class RunRecord {
 public:
  RunRecord(std::string command, const ExperimentConfig& cfg)
      : command_(std::move(command)),
        hash_(cfg.ParamsHash()),
        started_(UtcNow()),
        t0_(std::chrono::steady_clock::now()) {}

  void Write(const fs::path& dir) const {
    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0_)
                          .count();
    WriteJsonFile(dir / ("run_" + command_ + ".json"),
                  {{"command", command_},
                   {"config_hash", Hex(hash_)},
                   {"timestamps", {{"started", started_}, {"finished", UtcNow()}}},
                   {"wall_ms", ms}});
  }

 private:
  std::string command_;
  uint64_t hash_;
  std::string started_;
  std::chrono::steady_clock::time_point t0_;
};

void TrainInto(const ExperimentConfig& cfg, const fs::path& dir, std::ostream& log) {
  const Corpus corpus = LoadConfiguredCorpus(cfg);
  const auto provider = MakeProvider(cfg);
  fs::create_directories(dir);
  WriteJsonFile(dir / "config.json", cfg.flat);

  auto log_out = OpenOut(dir / "train_log.jsonl");
  const auto sink = [&](const TrainLogEntry& e) {
    log_out << json{{"epoch", e.epoch},
                    {"batch", e.batch},
                    {"mean_loss", e.mean_loss},
                    {"wall_ms", e.wall_ms}}
                   .dump()
            << '\n';
    log << "epoch " << e.epoch << " batch " << e.batch << " loss " << e.mean_loss
        << '\n';
  };
  TrainResult result = Train(corpus, *provider, cfg.model, cfg.train, sink);
  SaveCheckpoint(dir / "checkpoint.bin", result.params, cfg.ParamsHash());
  WriteJsonFile(dir / "train_summary.json",
                {{"epoch_mean_loss", result.epoch_mean_loss},
                 {"samples_per_epoch", result.stats.samples_per_epoch},
                 {"cold_start_skipped", result.stats.cold_start_skipped},
                 {"no_click_skipped", result.stats.no_click_skipped},
                 {"no_negative_skipped", result.stats.no_negative_skipped},
                 {"params", CountParams(cfg.model).total}});
  log << "wrote " << (dir / "checkpoint.bin").string() << '\n';
}

MetricsReport EvalInto(const ExperimentConfig& cfg, const fs::path& checkpoint,
                       const fs::path& dir, std::ostream& log) {
  if (!fs::exists(checkpoint)) {
    throw Error("checkpoint '" + checkpoint.string() + "' does not exist");
  }
  ModelParams params = ZeroModel(cfg.model);
  const uint64_t hash = LoadCheckpoint(checkpoint, params);
  if (hash != cfg.ParamsHash()) {
    throw FormatError("checkpoint '" + checkpoint.string() + "' has config hash " +
                      Hex(hash) + " but the configuration hashes to " +
                      Hex(cfg.ParamsHash()));
  }
  const Corpus corpus = LoadConfiguredCorpus(cfg);
  const auto provider = MakeProvider(cfg);
  const NewsFeatures features(corpus.news, *provider);
  const ModelScorer scorer(cfg.model, params, features, cfg.train.history_cap);
  const EvalResult result = Evaluate(corpus.dev_sessions, scorer, cfg.eval_seed);

  fs::create_directories(dir);
  json metrics = ToJson(result.metrics);
  metrics["scoring"] = ScoringName(cfg.model.scoring.variant);
  metrics["config_hash"] = Hex(hash);
  WriteJsonFile(dir / "metrics.json", metrics);
  {
    auto out = OpenOut(dir / "impressions.jsonl");
    WriteImpressionsJsonl(result.impressions, out);
  }
  {
    auto out = OpenOut(dir / "losses.txt");
    WriteLosses(result.losses, out);
  }
  {
    auto out = OpenOut(dir / "loss_hist.csv");
    WriteLossHistogram(result.losses, cfg.hist_bins, out);
  }
  log << "auc " << result.metrics.auc << " mrr " << result.metrics.mrr << " ndcg@5 "
      << result.metrics.ndcg5 << " ndcg@10 " << result.metrics.ndcg10 << '\n';
  return result.metrics;
}

}  // namespace

DirLock::DirLock(const fs::path& dir) {
  fs::create_directories(dir);
  const fs::path lock = dir / ".lock";
  fd_ = ::open(lock.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
  if (fd_ < 0) throw Error("cannot open lock file '" + lock.string() + "'");
  if (::flock(fd_, LOCK_EX | LOCK_NB) != 0) {
    ::close(fd_);
    fd_ = -1;
    throw Error("output directory '" + dir.string() + "' is locked by another run");
  }
}

DirLock::~DirLock() {
  if (fd_ >= 0) {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
}

void WriteJsonFile(const fs::path& path, const json& j) {
  auto out = OpenOut(path);
  out << j.dump(2) << '\n';
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

Corpus LoadConfiguredCorpus(const ExperimentConfig& cfg) {
  switch (cfg.corpus.kind) {
    case CorpusKind::kSynth:
      return GenerateSynthetic(cfg.corpus.synth).corpus;
    case CorpusKind::kMind:
      return LoadMindCorpus(cfg.corpus.mind_train_dir, cfg.corpus.mind_dev_dir);
    case CorpusKind::kDump:
      return LoadCorpus(cfg.corpus.dump_dir);
  }
  throw ConfigError("corpus.source", "unsupported source");
}

std::unique_ptr<EmbeddingProvider> MakeProvider(const ExperimentConfig& cfg) {
  const auto& e = cfg.embeddings;
  if (e.kind == EmbeddingKind::kHashed) {
    return std::make_unique<HashedEmbeddingProvider>(e.dim, e.seed, e.max_tokens);
  }
  if (!fs::exists(e.path)) {
    throw ConfigError("embeddings.path", "'" + e.path.string() + "' does not exist");
  }
  auto store = NembStore::Open(e.path, e.max_tokens);
  if (store->dim() != e.dim) {
    throw ConfigError("embeddings.dim", "store has width " + std::to_string(store->dim()) +
                                            ", configured " + std::to_string(e.dim));
  }
  return store;
}

void CmdSynth(const ExperimentConfig& cfg, std::ostream& log) {
  if (cfg.corpus.kind != CorpusKind::kSynth) {
    throw ConfigError("corpus.source", "synth command needs corpus.source = synth");
  }
  DirLock lock(cfg.output_dir);
  RunRecord run("synth", cfg);
  const SyntheticCorpus synth = GenerateSynthetic(cfg.corpus.synth);
  const fs::path dir = cfg.output_dir / "corpus";
  SaveCorpus(synth.corpus, dir);
  {
    auto out = OpenOut(dir / "latents.jsonl");
    WriteLatentsJsonl(synth.latents, out);
  }
  run.Write(cfg.output_dir);
  log << "wrote " << synth.corpus.news.size() << " news, "
      << synth.corpus.train_sessions.size() << " train and "
      << synth.corpus.dev_sessions.size() << " dev sessions to " << dir.string() << '\n';
}

void CmdTrain(const ExperimentConfig& cfg, std::ostream& log) {
  DirLock lock(cfg.output_dir);
  RunRecord run("train", cfg);
  TrainInto(cfg, cfg.output_dir, log);
  run.Write(cfg.output_dir);
}

MetricsReport CmdEval(const ExperimentConfig& cfg, const fs::path& checkpoint,
                      std::ostream& log) {
  DirLock lock(cfg.output_dir);
  RunRecord run("eval", cfg);
  const fs::path ckpt = checkpoint.empty() ? cfg.output_dir / "checkpoint.bin" : checkpoint;
  MetricsReport m = EvalInto(cfg, ckpt, cfg.output_dir, log);
  run.Write(cfg.output_dir);
  return m;
}

ParamCountTable CmdCountParams(const ExperimentConfig& cfg, std::ostream& out) {
  const ParamCountTable table = CountParams(cfg.model);
  json blocks = json::array();
  out << std::left << std::setw(20) << "block" << std::right << std::setw(12) << "params"
      << '\n';
  for (const auto& b : table.blocks) {
    out << std::left << std::setw(20) << b.block << std::right << std::setw(12) << b.count
        << '\n';
    blocks.push_back({{"block", b.block}, {"count", b.count}});
  }
  out << std::left << std::setw(20) << "total" << std::right << std::setw(12)
      << table.total << '\n';
  DirLock lock(cfg.output_dir);
  WriteJsonFile(cfg.output_dir / "params.json",
                {{"blocks", blocks},
                 {"total", table.total},
                 {"scoring", ScoringName(cfg.model.scoring.variant)}});
  return table;
}

DominanceReport CmdCompare(const CompareOptions& opts, std::ostream& out) {
  const auto read = [](const fs::path& p) {
    std::ifstream in(p);
    if (!in) throw Error("cannot open loss file '" + p.string() + "'");
    return ReadLosses(in);
  };
  const auto x = read(opts.a);
  const auto y = read(opts.b);
  const DominanceReport r =
      DominanceTest(x, y, opts.epsilon, opts.alpha, opts.bootstrap, opts.seed);
  const json j = ToJson(r);
  if (!opts.out.empty()) {
    if (opts.out.has_parent_path()) fs::create_directories(opts.out.parent_path());
    WriteJsonFile(opts.out, j);
  }
  out << j.dump(2) << '\n';
  return r;
}

json CmdGrid(const ExperimentConfig& cfg, const std::vector<std::string>& scorings,
             std::ostream& log) {
  if (scorings.empty()) throw ConfigError("--scoring", "empty scoring list");
  DirLock lock(cfg.output_dir);
  RunRecord run("grid", cfg);
  json rows = json::array();
  for (const auto& name : scorings) {
    ExperimentConfig run_cfg = cfg;
    run_cfg.Override("model.scoring=" + name);
    const fs::path dir = cfg.output_dir / name;
    run_cfg.Override("output.dir=" + json(dir.string()).dump());
    log << "== " << name << '\n';
    TrainInto(run_cfg, dir, log);
    const MetricsReport m = EvalInto(run_cfg, dir / "checkpoint.bin", dir, log);
    json row = ToJson(m);
    row["scoring"] = name;
    row["params"] = CountParams(run_cfg.model).total;
    rows.push_back(row);
  }
  const json summary = {{"runs", rows}};
  WriteJsonFile(cfg.output_dir / "grid_summary.json", summary);
  run.Write(cfg.output_dir);
  return summary;
}

}  // namespace newsrec::cli

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

#include "cli.h"

#include <exception>
#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.h"
#include "newsrec/errors.h"

namespace newsrec::cli {
namespace {

// Dotted overrides arrive as CLI11 extras: "--model.scoring=bilinear" or
// "--model.scoring bilinear".
std::vector<std::string> CollectOverrides(const std::vector<std::string>& extras) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < extras.size(); ++i) {
    const std::string& arg = extras[i];
    if (arg.rfind("--", 0) != 0) {
      throw ConfigError(arg, "unexpected argument; overrides look like --key=value");
    }
    if (arg.find('=') != std::string::npos) {
      out.push_back(arg.substr(2));
    } else if (i + 1 < extras.size()) {
      out.push_back(arg.substr(2) + "=" + extras[++i]);
    } else {
      throw ConfigError(arg.substr(2), "override is missing a value");
    }
  }
  return out;
}

std::vector<std::string> SplitList(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto comma = s.find(',', start);
    const auto end = comma == std::string::npos ? s.size() : comma;
    if (end > start) out.push_back(s.substr(start, end - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

int Run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Content-based news recommendation experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "newsrec 0.1.0");

  std::string config_path;
  const auto add_config = [&](CLI::App* cmd) {
    cmd->add_option("-c,--config", config_path, "JSON configuration file");
    cmd->allow_extras();
    cmd->footer("Any configuration key can be overridden as --key=value.");
  };

  auto* synth = app.add_subcommand("synth", "Generate and save a synthetic corpus");
  add_config(synth);
  auto* train = app.add_subcommand("train", "Train a model and save a checkpoint");
  add_config(train);
  auto* eval = app.add_subcommand("eval", "Evaluate a checkpoint on the dev split");
  add_config(eval);
  std::string checkpoint;
  eval->add_option("--checkpoint", checkpoint,
                   "Checkpoint file (default: <output.dir>/checkpoint.bin)");
  auto* count = app.add_subcommand("count-params", "Print trainable parameter counts");
  add_config(count);
  auto* grid = app.add_subcommand("grid", "Train and evaluate several scoring functions");
  add_config(grid);
  std::string scorings = "inner,bilinear";
  grid->add_option("--scoring", scorings, "Comma-separated scoring variants")
      ->capture_default_str();

  auto* compare = app.add_subcommand("compare", "Almost stochastic dominance of loss samples");
  CompareOptions copts;
  std::string a_path, b_path, out_path;
  compare->add_option("--a", a_path, "Losses of model A, one per line")->required();
  compare->add_option("--b", b_path, "Losses of model B, one per line")->required();
  compare->add_option("--epsilon", copts.epsilon, "Violation threshold")
      ->capture_default_str();
  compare->add_option("--alpha", copts.alpha, "Significance level")->capture_default_str();
  compare->add_option("--bootstrap", copts.bootstrap, "Bootstrap replicates")
      ->capture_default_str();
  compare->add_option("--seed", copts.seed, "Bootstrap seed")->capture_default_str();
  compare->add_option("--out", out_path, "Write the report JSON to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (compare->parsed()) {
      copts.a = a_path;
      copts.b = b_path;
      copts.out = out_path;
      CmdCompare(copts, out);
      return 0;
    }

    CLI::App* cmd = app.get_subcommands().front();
    ExperimentConfig cfg = config_path.empty()
                               ? ExperimentConfig::FromJson(nlohmann::json::object())
                               : ExperimentConfig::FromFile(config_path);
    cfg.ApplyOverrides(CollectOverrides(cmd->remaining()));

    if (cmd == synth) {
      CmdSynth(cfg, err);
    } else if (cmd == train) {
      CmdTrain(cfg, err);
    } else if (cmd == eval) {
      const MetricsReport m = CmdEval(cfg, checkpoint, err);
      out << ToJson(m).dump(2) << '\n';
    } else if (cmd == count) {
      CmdCountParams(cfg, out);
    } else if (cmd == grid) {
      out << CmdGrid(cfg, SplitList(scorings), err).dump(2) << '\n';
    }
    return 0;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace newsrec::cli

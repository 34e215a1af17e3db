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

#ifndef NEWSREC_EVALUATION_H_
#define NEWSREC_EVALUATION_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "newsrec/corpus.h"
#include "newsrec/model.h"
#include "newsrec/random.h"
#include "newsrec/training.h"

namespace newsrec {

// Anything that can score the candidates of a non-cold-start session.
class SessionScorer {
 public:
  virtual ~SessionScorer() = default;
  // One score in (0, 1) per entry of session.shown.
  virtual std::vector<double> Score(const Session& session) const = 0;
};

// Trained model over frozen features. News vectors are memoized, so a
// scorer must not be shared across threads.
class ModelScorer final : public SessionScorer {
 public:
  ModelScorer(const ModelConfig& cfg, const ModelParams& params,
              const NewsFeatures& features, int history_cap);

  std::vector<double> Score(const Session& session) const override;
  const Vector& NewsVector(std::size_t index) const;
  Vector UserVector(const std::vector<std::string>& history) const;

 private:
  ModelConfig cfg_;
  const ModelParams* params_;
  const NewsFeatures* features_;
  int history_cap_;
  mutable std::vector<std::optional<Vector>> cache_;
};

struct ScoredImpression {
  std::string session_id;
  std::vector<double> scores;
  std::vector<char> labels;
  double mean_loss = 0.0;
  bool cold_start = false;
};

// Cold-start sessions get i.i.d. uniform(0, 1) scores from `rng`; the others
// are scored by `scorer`. Throws MissingIdError on unresolvable ids.
ScoredImpression ScoreImpression(const Session& session,
                                 const SessionScorer& scorer, Rng& rng);

// Percent-scaled means over the rankable impressions (two or more
// candidates, at least one click and one non-click).
struct MetricsReport {
  double auc = 0.0;
  double mrr = 0.0;
  double ndcg5 = 0.0;
  double ndcg10 = 0.0;
  std::size_t n_impressions = 0;
  std::size_t n_cold_start = 0;
  std::size_t n_unrankable = 0;
};

MetricsReport Aggregate(const std::vector<ScoredImpression>& impressions);

struct EvalResult {
  MetricsReport metrics;
  std::vector<ScoredImpression> impressions;
  std::vector<double> losses;  // per-impression mean BCE, session order
};

// Session i draws its cold-start scores from DeriveSeed(seed, i). Throws
// Error on an empty session list.
EvalResult Evaluate(const std::vector<Session>& sessions,
                    const SessionScorer& scorer, uint64_t seed);

nlohmann::json ToJson(const MetricsReport& m);
nlohmann::json ToJson(const ScoredImpression& s);
ScoredImpression ScoredImpressionFromJson(const nlohmann::json& j);

void WriteImpressionsJsonl(const std::vector<ScoredImpression>& impressions,
                           std::ostream& out);
std::vector<ScoredImpression> ReadImpressionsJsonl(std::istream& in);

// One loss per line, shortest round-trip formatting.
void WriteLosses(const std::vector<double>& losses, std::ostream& out);
std::vector<double> ReadLosses(std::istream& in);

// CSV "bin_lo,bin_hi,count" with `bins` equal-width bins over [0, max].
void WriteLossHistogram(const std::vector<double>& losses, int bins,
                        std::ostream& out);

}  // namespace newsrec

#endif  // NEWSREC_EVALUATION_H_

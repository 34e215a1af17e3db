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

#include "newsrec/evaluation.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>

#include "newsrec/errors.h"
#include "newsrec/metrics.h"

namespace newsrec {

ModelScorer::ModelScorer(const ModelConfig& cfg, const ModelParams& params,
                         const NewsFeatures& features, int history_cap)
    : cfg_(cfg),
      params_(&params),
      features_(&features),
      history_cap_(history_cap),
      cache_(features.news().size()) {}

const Vector& ModelScorer::NewsVector(std::size_t index) const {
  auto& slot = cache_.at(index);
  if (!slot) {
    slot = EncodeNews(features_->Tokens(index), params_->news, cfg_.news_encoder());
  }
  return *slot;
}

Vector ModelScorer::UserVector(const std::vector<std::string>& history) const {
  const auto recent = TruncateHistory(history, history_cap_);
  Matrix rows(static_cast<Eigen::Index>(recent.size()), cfg_.dim);
  for (std::size_t t = 0; t < recent.size(); ++t) {
    rows.row(t) = NewsVector(features_->Index(recent[t])).transpose();
  }
  return EncodeUser(rows, params_->user, cfg_.user_encoder());
}

std::vector<double> ModelScorer::Score(const Session& session) const {
  const Vector user = UserVector(session.history);
  std::vector<double> scores;
  scores.reserve(session.shown.size());
  for (const auto& imp : session.shown) {
    scores.push_back(newsrec::Score(cfg_.scoring, params_->scoring, user,
                                    NewsVector(features_->Index(imp.news_id))));
  }
  return scores;
}

ScoredImpression ScoreImpression(const Session& session,
                                 const SessionScorer& scorer, Rng& rng) {
  ScoredImpression out;
  out.session_id = session.session_id;
  out.cold_start = session.cold_start();
  for (const auto& imp : session.shown) out.labels.push_back(imp.clicked ? 1 : 0);
  if (out.cold_start) {
    for (std::size_t i = 0; i < session.shown.size(); ++i) {
      out.scores.push_back(UniformUnit(rng));
    }
  } else {
    out.scores = scorer.Score(session);
  }
  out.mean_loss = BceLoss(out.scores, out.labels);
  return out;
}

MetricsReport Aggregate(const std::vector<ScoredImpression>& impressions) {
  MetricsReport m;
  std::size_t rankable = 0;
  for (const auto& s : impressions) {
    ++m.n_impressions;
    if (s.cold_start) ++m.n_cold_start;
    const auto auc = s.scores.size() >= 2 ? Auc(s.scores, s.labels) : std::nullopt;
    if (!auc) {
      ++m.n_unrankable;
      continue;
    }
    ++rankable;
    m.auc += *auc;
    m.mrr += *Mrr(s.scores, s.labels);
    m.ndcg5 += *Ndcg(s.scores, s.labels, 5);
    m.ndcg10 += *Ndcg(s.scores, s.labels, 10);
  }
  if (rankable > 0) {
    const double scale = 100.0 / static_cast<double>(rankable);
    m.auc *= scale;
    m.mrr *= scale;
    m.ndcg5 *= scale;
    m.ndcg10 *= scale;
  }
  return m;
}

EvalResult Evaluate(const std::vector<Session>& sessions,
                    const SessionScorer& scorer, uint64_t seed) {
  if (sessions.empty()) throw Error("evaluation over an empty session list");
  EvalResult result;
  result.impressions.reserve(sessions.size());
  for (std::size_t i = 0; i < sessions.size(); ++i) {
    Rng rng(DeriveSeed(seed, i));
    result.impressions.push_back(ScoreImpression(sessions[i], scorer, rng));
    result.losses.push_back(result.impressions.back().mean_loss);
  }
  result.metrics = Aggregate(result.impressions);
  return result;
}

nlohmann::json ToJson(const MetricsReport& m) {
  return {{"auc", m.auc},
          {"mrr", m.mrr},
          {"ndcg5", m.ndcg5},
          {"ndcg10", m.ndcg10},
          {"n_impressions", m.n_impressions},
          {"n_cold_start", m.n_cold_start},
          {"n_unrankable", m.n_unrankable}};
}

nlohmann::json ToJson(const ScoredImpression& s) {
  return {{"session_id", s.session_id},
          {"scores", s.scores},
          {"labels", std::vector<int>(s.labels.begin(), s.labels.end())},
          {"mean_loss", s.mean_loss},
          {"cold_start", s.cold_start}};
}

ScoredImpression ScoredImpressionFromJson(const nlohmann::json& j) {
  ScoredImpression s;
  s.session_id = j.at("session_id").get<std::string>();
  s.scores = j.at("scores").get<std::vector<double>>();
  for (int l : j.at("labels").get<std::vector<int>>()) s.labels.push_back(l != 0);
  s.mean_loss = j.at("mean_loss").get<double>();
  s.cold_start = j.at("cold_start").get<bool>();
  return s;
}

void WriteImpressionsJsonl(const std::vector<ScoredImpression>& impressions,
                           std::ostream& out) {
  for (const auto& s : impressions) out << ToJson(s).dump() << '\n';
}

std::vector<ScoredImpression> ReadImpressionsJsonl(std::istream& in) {
  std::vector<ScoredImpression> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(ScoredImpressionFromJson(nlohmann::json::parse(line)));
  }
  return out;
}

void WriteLosses(const std::vector<double>& losses, std::ostream& out) {
  char buf[64];
  for (double v : losses) {
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    out.write(buf, res.ptr - buf);
    out.put('\n');
  }
}

std::vector<double> ReadLosses(std::istream& in) {
  std::vector<double> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    double v = 0.0;
    const auto res = std::from_chars(line.data(), line.data() + line.size(), v);
    if (res.ec != std::errc() || res.ptr != line.data() + line.size() ||
        !std::isfinite(v)) {
      throw ParseError("loss file line " + std::to_string(line_no) +
                       ": not a finite real '" + line + "'");
    }
    out.push_back(v);
  }
  return out;
}

void WriteLossHistogram(const std::vector<double>& losses, int bins,
                        std::ostream& out) {
  if (bins < 1) throw ConfigError("eval.hist_bins", "must be positive");
  double hi = 0.0;
  for (double v : losses) hi = std::max(hi, v);
  if (hi <= 0.0) hi = 1.0;
  std::vector<std::size_t> counts(bins, 0);
  for (double v : losses) {
    auto b = static_cast<int>(v / hi * bins);
    counts[std::clamp(b, 0, bins - 1)]++;
  }
  out << "bin_lo,bin_hi,count\n";
  for (int b = 0; b < bins; ++b) {
    out << nlohmann::json(hi * b / bins).dump() << ','
        << nlohmann::json(hi * (b + 1) / bins).dump() << ',' << counts[b] << '\n';
  }
}

}  // namespace newsrec

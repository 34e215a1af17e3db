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

#include "newsrec/synthetic.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <vector>

#include <boost/math/distributions/normal.hpp>
#include <nlohmann/json.hpp>

#include "newsrec/errors.h"
#include "newsrec/random.h"

namespace newsrec {
namespace {

constexpr int kMaxLabelRedraws = 1000;

const std::array<double, kTitleBuckets - 1>& BucketEdges() {
  static const auto edges = [] {
    std::array<double, kTitleBuckets - 1> e{};
    boost::math::normal_distribution<double> normal;
    for (int k = 1; k < kTitleBuckets; ++k) {
      e[k - 1] = boost::math::quantile(normal, double(k) / kTitleBuckets);
    }
    return e;
  }();
  return edges;
}

Eigen::MatrixXd InteractionMatrix(const SynthConfig& cfg, Rng& rng) {
  const int d = cfg.latent_dim;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(d, d);
  switch (cfg.interaction) {
    case Interaction::kDiagonal:
      a.setIdentity();
      break;
    case Interaction::kPermutation:
      for (int i = 0; i < d; ++i) a(i, (i + 1) % d) = 1.0;
      break;
    case Interaction::kDense: {
      Eigen::MatrixXd g(d, d);
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) g(i, j) = StandardNormal(rng);
      }
      Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
      Eigen::MatrixXd q = qr.householderQ();
      const Eigen::MatrixXd r = qr.matrixQR();
      for (int j = 0; j < d; ++j) {
        if (r(j, j) < 0) q.col(j) = -q.col(j);
      }
      a = q;
      break;
    }
  }
  return a;
}

double Sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// k distinct indices from [0, n) excluding `taken`, by partial shuffle.
std::vector<int> SampleDistinct(int n, int k, const std::vector<char>& taken,
                                Rng& rng) {
  std::vector<int> pool;
  pool.reserve(n);
  for (int i = 0; i < n; ++i) {
    if (!taken[i]) pool.push_back(i);
  }
  for (int i = 0; i < k; ++i) {
    const auto j = i + static_cast<int>(UniformIndex(rng, pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

}  // namespace

std::string_view InteractionName(Interaction interaction) {
  switch (interaction) {
    case Interaction::kDiagonal:
      return "diagonal";
    case Interaction::kPermutation:
      return "permutation";
    case Interaction::kDense:
      return "dense";
  }
  return "?";
}

Interaction ParseInteraction(std::string_view name) {
  if (name == "diagonal") return Interaction::kDiagonal;
  if (name == "permutation") return Interaction::kPermutation;
  if (name == "dense") return Interaction::kDense;
  throw ConfigError("synth.interaction",
                    "expected diagonal|permutation|dense, got '" +
                        std::string(name) + "'");
}

void SynthConfig::Validate() const {
  auto positive = [](const char* field, int v) {
    if (v <= 0) throw ConfigError(field, "must be positive");
  };
  positive("synth.n_users", n_users);
  positive("synth.n_news", n_news);
  positive("synth.n_sessions", n_sessions);
  positive("synth.latent_dim", latent_dim);
  positive("synth.history_len", history_len);
  if (candidates_per_session < 2) {
    throw ConfigError("synth.candidates_per_session", "must be at least 2");
  }
  if (interaction != Interaction::kDiagonal && latent_dim < 2) {
    throw ConfigError("synth.latent_dim",
                      "must be at least 2 for non-diagonal interactions");
  }
  if (!(noise_std >= 0.0) || !std::isfinite(noise_std)) {
    throw ConfigError("synth.noise_std", "must be a finite non-negative real");
  }
  if (history_pool < history_len) {
    throw ConfigError("synth.history_pool", "must be at least history_len");
  }
  if (n_news < history_pool + candidates_per_session) {
    throw ConfigError("synth.n_news",
                      "must be at least history_pool + candidates_per_session");
  }
}

int LatentBucket(double value) {
  const auto& edges = BucketEdges();
  return static_cast<int>(std::upper_bound(edges.begin(), edges.end(), value) -
                          edges.begin());
}

std::string LatentToken(int dim, int bucket) {
  return "f" + std::to_string(dim) + "b" + std::to_string(bucket);
}

SyntheticCorpus GenerateSynthetic(const SynthConfig& cfg) {
  cfg.Validate();
  Rng rng(cfg.seed);
  const int d = cfg.latent_dim;

  SyntheticCorpus out;
  SynthLatents& lat = out.latents;
  lat.interaction = InteractionMatrix(cfg, rng);
  lat.users.resize(cfg.n_users, d);
  lat.news.resize(cfg.n_news, d);
  for (int i = 0; i < cfg.n_users; ++i) {
    for (int k = 0; k < d; ++k) lat.users(i, k) = StandardNormal(rng);
  }
  for (int j = 0; j < cfg.n_news; ++j) {
    for (int k = 0; k < d; ++k) lat.news(j, k) = StandardNormal(rng);
  }

  Corpus& corpus = out.corpus;
  for (int j = 0; j < cfg.n_news; ++j) {
    NewsItem item;
    item.id = "N" + std::to_string(j);
    for (int k = 0; k < d; ++k) {
      if (k > 0) item.title += ' ';
      item.title += LatentToken(k, LatentBucket(lat.news(j, k)));
    }
    corpus.news.Add(std::move(item));
  }

  const int n_train = cfg.n_sessions - cfg.n_sessions / 10;
  std::vector<char> taken(cfg.n_news, 0);
  for (int s = 0; s < cfg.n_sessions; ++s) {
    const int user = static_cast<int>(UniformIndex(rng, cfg.n_users));
    const Eigen::VectorXd u = lat.users.row(user).transpose();
    const Eigen::VectorXd click_dir = lat.interaction.transpose() * u;

    std::fill(taken.begin(), taken.end(), 0);
    std::vector<int> pool = SampleDistinct(cfg.n_news, cfg.history_pool, taken, rng);
    std::vector<double> affinity(pool.size());
    for (std::size_t p = 0; p < pool.size(); ++p) {
      affinity[p] = lat.news.row(pool[p]).dot(u);
    }
    std::vector<std::size_t> order(pool.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return affinity[a] > affinity[b];
    });
    std::vector<int> history;
    for (int t = 0; t < cfg.history_len; ++t) history.push_back(pool[order[t]]);
    // Ascending affinity so the strongest match is the most recent read.
    std::reverse(history.begin(), history.end());
    for (int h : history) taken[h] = 1;

    const std::vector<int> candidates =
        SampleDistinct(cfg.n_news, cfg.candidates_per_session, taken, rng);
    std::vector<double> logits(candidates.size());
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      logits[c] = lat.news.row(candidates[c]).dot(click_dir);
    }

    std::vector<char> labels(candidates.size());
    bool ok = false;
    for (int attempt = 0; attempt < kMaxLabelRedraws && !ok; ++attempt) {
      int clicks = 0;
      for (std::size_t c = 0; c < candidates.size(); ++c) {
        const double noise = cfg.noise_std > 0 ? cfg.noise_std * StandardNormal(rng) : 0.0;
        labels[c] = UniformUnit(rng) < Sigmoid(logits[c] + noise);
        clicks += labels[c];
      }
      ok = clicks > 0 && clicks < static_cast<int>(candidates.size());
    }
    if (!ok) {
      throw Error("session " + std::to_string(s) +
                  ": no mix of clicks and non-clicks after " +
                  std::to_string(kMaxLabelRedraws) + " redraws");
    }

    Session session;
    session.session_id = "S" + std::to_string(s);
    session.user_id = "U" + std::to_string(user);
    for (int h : history) session.history.push_back("N" + std::to_string(h));
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      session.shown.push_back({"N" + std::to_string(candidates[c]), labels[c] != 0});
    }
    (s < n_train ? corpus.train_sessions : corpus.dev_sessions)
        .push_back(std::move(session));
  }
  return out;
}

void WriteLatentsJsonl(const SynthLatents& latents, std::ostream& out) {
  using nlohmann::json;
  auto row = [](const Eigen::MatrixXd& m, Eigen::Index r) {
    return std::vector<double>(m.row(r).begin(), m.row(r).end());
  };
  json matrix = json::array();
  for (Eigen::Index r = 0; r < latents.interaction.rows(); ++r) {
    matrix.push_back(row(latents.interaction, r));
  }
  out << json{{"kind", "interaction"}, {"matrix", matrix}}.dump() << '\n';
  for (Eigen::Index i = 0; i < latents.users.rows(); ++i) {
    out << json{{"kind", "user"}, {"id", "U" + std::to_string(i)},
                {"vector", row(latents.users, i)}}.dump()
        << '\n';
  }
  for (Eigen::Index j = 0; j < latents.news.rows(); ++j) {
    out << json{{"kind", "news"}, {"id", "N" + std::to_string(j)},
                {"vector", row(latents.news, j)}}.dump()
        << '\n';
  }
}

SynthLatents ReadLatentsJsonl(std::istream& in) {
  using nlohmann::json;
  std::vector<std::vector<double>> users, news, matrix;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const json j = json::parse(line);
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "interaction") {
      matrix = j.at("matrix").get<std::vector<std::vector<double>>>();
    } else if (kind == "user") {
      users.push_back(j.at("vector").get<std::vector<double>>());
    } else if (kind == "news") {
      news.push_back(j.at("vector").get<std::vector<double>>());
    } else {
      throw ParseError("latents.jsonl: unknown kind '" + kind + "'");
    }
  }
  auto to_matrix = [](const std::vector<std::vector<double>>& rows) {
    Eigen::MatrixXd m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (static_cast<Eigen::Index>(rows[r].size()) != m.cols()) {
        throw ParseError("latents.jsonl: ragged rows");
      }
      for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
    }
    return m;
  };
  return {to_matrix(users), to_matrix(news), to_matrix(matrix)};
}

}  // namespace newsrec

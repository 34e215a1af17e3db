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

#ifndef NEWSREC_SYNTHETIC_H_
#define NEWSREC_SYNTHETIC_H_

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "newsrec/corpus.h"

namespace newsrec {

// Ground-truth interaction between user and news latents in the click logit
// u*^T A* n*.
enum class Interaction {
  kDiagonal,     // A* = I: within-dimension dependencies only.
  kPermutation,  // A* = cyclic shift (swap when latent_dim = 2).
  kDense,        // A* = random rotation.
};

std::string_view InteractionName(Interaction interaction);
// Throws ConfigError on an unknown name.
Interaction ParseInteraction(std::string_view name);

struct SynthConfig {
  int n_users = 200;
  int n_news = 2000;
  int n_sessions = 2000;
  int candidates_per_session = 20;
  int latent_dim = 8;
  Interaction interaction = Interaction::kPermutation;
  double noise_std = 0.0;
  uint64_t seed = 1;
  // History length and the random pool it is picked from.
  int history_len = 10;
  int history_pool = 50;

  // Throws ConfigError naming the offending field.
  void Validate() const;
};

// Latent factors behind a synthetic corpus. Kept for oracles; models never
// see them.
struct SynthLatents {
  Eigen::MatrixXd users;  // n_users x latent_dim
  Eigen::MatrixXd news;   // n_news x latent_dim
  Eigen::MatrixXd interaction;  // latent_dim x latent_dim
};

struct SyntheticCorpus {
  Corpus corpus;
  SynthLatents latents;
};

inline constexpr int kTitleBuckets = 8;

// Equiprobable standard-normal bucket of a latent coordinate, in [0, 8).
int LatentBucket(double value);

// Title token for coordinate `dim` falling in `bucket`, e.g. "f3b5".
std::string LatentToken(int dim, int bucket);

// Ids are "U<i>", "N<j>", "S<k>". Sessions are split 90/10 by index. Users'
// histories are the top history_len news of a random pool by u*^T n*; the
// shown candidates are clicked with probability sigmoid(u*^T A* n* + noise),
// redrawn until each session has a click and a non-click. Throws Error when
// that takes more than 1000 redraws.
SyntheticCorpus GenerateSynthetic(const SynthConfig& cfg);

// Sidecar with one JSON object per line: the interaction matrix, then users,
// then news.
void WriteLatentsJsonl(const SynthLatents& latents, std::ostream& out);
SynthLatents ReadLatentsJsonl(std::istream& in);

}  // namespace newsrec

#endif  // NEWSREC_SYNTHETIC_H_

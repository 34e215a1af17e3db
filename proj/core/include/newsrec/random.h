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

#ifndef NEWSREC_RANDOM_H_
#define NEWSREC_RANDOM_H_

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>
#include <utility>

namespace newsrec {

// SplitMix64 finalizer. Used as a counter-based generator: the i-th draw of
// stream `key` is Mix64(key + (i + 1) * kGolden).
inline uint64_t Mix64(uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

inline constexpr uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// FNV-1a over the bytes, then mixed with the seed.
inline uint64_t Hash64(std::string_view text, uint64_t seed) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return Mix64(h ^ Mix64(seed + kGolden));
}

// Seed for an independent sub-stream (bootstrap replicate, session, epoch).
inline uint64_t DeriveSeed(uint64_t seed, uint64_t index) {
  return Mix64(Mix64(seed) + (index + 1) * kGolden);
}

// Uniform double in [0, 1) from the top 53 bits.
inline double ToUnit(uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Stateless counter-based stream.
class CounterRng {
 public:
  explicit CounterRng(uint64_t key) : key_(key) {}
  uint64_t NextBits() { return Mix64(key_ + (++counter_) * kGolden); }
  double NextUnit() { return ToUnit(NextBits()); }

 private:
  uint64_t key_;
  uint64_t counter_ = 0;
};

using Rng = std::mt19937_64;

// Uniform index in [0, n). Rejection sampling keeps it exact and, unlike
// std::uniform_int_distribution, identical across standard libraries.
inline uint64_t UniformIndex(Rng& rng, uint64_t n) {
  const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

inline double UniformUnit(Rng& rng) { return ToUnit(rng()); }

// Standard normal via Box-Muller, portable across standard libraries.
inline double StandardNormal(Rng& rng) {
  constexpr double kTwoPi = 6.283185307179586476925286766559;
  double u1;
  do {
    u1 = UniformUnit(rng);
  } while (u1 <= 0.0);
  const double u2 = UniformUnit(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

// Fisher-Yates with UniformIndex.
template <typename It>
void Shuffle(It first, It last, Rng& rng) {
  const auto n = static_cast<uint64_t>(last - first);
  for (uint64_t i = n; i > 1; --i) {
    const uint64_t j = UniformIndex(rng, i);
    std::swap(first[i - 1], first[j]);
  }
}

}  // namespace newsrec

#endif  // NEWSREC_RANDOM_H_

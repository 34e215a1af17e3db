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

#ifndef NEWSREC_EMBEDDINGS_H_
#define NEWSREC_EMBEDDINGS_H_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "newsrec/corpus.h"

namespace newsrec {

// Frozen token embeddings of one news item: one row per token.
using EmbeddingMatrix =
    Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline constexpr int kDefaultMaxTokens = 30;

// Source of frozen per-token embeddings. Implementations are read-only after
// construction and safe for concurrent lookups.
class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  virtual int dim() const = 0;
  // At most max_tokens rows (prefix), at least one. Throws MissingIdError
  // when the provider has no entry for the item.
  virtual EmbeddingMatrix Embed(const NewsItem& item) const = 0;
};

// Lowercases and splits on every non-alphanumeric byte.
std::vector<std::string> Tokenize(std::string_view text);

// Deterministic stand-in for a frozen transformer: every distinct token text
// maps to a fixed row, uniform in [-0.5, 0.5] / sqrt(dim), drawn from a
// counter-based stream keyed by Hash64(token, seed). A title with no
// alphanumeric tokens embeds as the single row of the empty token.
class HashedEmbeddingProvider final : public EmbeddingProvider {
 public:
  HashedEmbeddingProvider(int dim, uint64_t seed,
                          int max_tokens = kDefaultMaxTokens);

  int dim() const override { return dim_; }
  EmbeddingMatrix Embed(const NewsItem& item) const override;
  EmbeddingMatrix EmbedText(std::string_view text) const;
  void TokenRow(std::string_view token, float* out) const;

 private:
  int dim_;
  uint64_t seed_;
  int max_tokens_;
};

// NEMB on-disk layout, all integers little-endian:
//   "NEMB" | u32 version=1 | u32 dim | u32 count
//   count x ( u16 id_len | id bytes | u32 L | L*dim float32, row-major )
struct NembHeader {
  uint32_t version = 1;
  uint32_t dim = 0;
  uint32_t count = 0;
};

inline constexpr char kNembMagic[4] = {'N', 'E', 'M', 'B'};
inline constexpr uint32_t kNembVersion = 1;

// Streaming writer. The entry count in the header is patched by Finish().
class NembWriter {
 public:
  NembWriter(const std::filesystem::path& path, uint32_t dim);
  ~NembWriter();
  NembWriter(const NembWriter&) = delete;
  NembWriter& operator=(const NembWriter&) = delete;

  void Add(std::string_view id, const EmbeddingMatrix& tokens);
  void Finish();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Memory-mapped NEMB reader. The whole file is indexed and validated on
// open; lookups copy out one record.
class NembStore final : public EmbeddingProvider {
 public:
  // Throws FormatError on a bad header and CorruptionError (with the byte
  // offset) on truncated records or duplicate ids.
  static std::unique_ptr<NembStore> Open(const std::filesystem::path& path,
                                         int max_tokens = kDefaultMaxTokens);
  ~NembStore() override;

  int dim() const override { return static_cast<int>(header_.dim); }
  std::size_t count() const { return header_.count; }
  bool Contains(std::string_view id) const;
  EmbeddingMatrix Lookup(std::string_view id) const;
  EmbeddingMatrix Embed(const NewsItem& item) const override {
    return Lookup(item.id);
  }

 private:
  NembStore() = default;

  struct Record {
    std::size_t offset;  // first float
    uint32_t rows;
  };

  NembHeader header_;
  int max_tokens_ = kDefaultMaxTokens;
  const unsigned char* data_ = nullptr;
  std::size_t size_ = 0;
  std::unordered_map<std::string, Record> index_;
};

}  // namespace newsrec

#endif  // NEWSREC_EMBEDDINGS_H_

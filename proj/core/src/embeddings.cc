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

#include "newsrec/embeddings.h"

#include <fcntl.h>
#include <sys/mman.h>
#include <sys/stat.h>
#include <unistd.h>

#include <bit>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>

#include "newsrec/errors.h"
#include "newsrec/random.h"

namespace newsrec {
namespace {

constexpr std::size_t kHeaderBytes = 16;

void PutU16(std::ostream& out, uint16_t v) {
  const char b[2] = {static_cast<char>(v & 0xff), static_cast<char>(v >> 8)};
  out.write(b, 2);
}

void PutU32(std::ostream& out, uint32_t v) {
  char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(b, 4);
}

uint16_t GetU16(const unsigned char* p) {
  return static_cast<uint16_t>(p[0] | (p[1] << 8));
}

uint32_t GetU32(const unsigned char* p) {
  return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
         (static_cast<uint32_t>(p[2]) << 16) |
         (static_cast<uint32_t>(p[3]) << 24);
}

}  // namespace

std::vector<std::string> Tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (std::isalnum(c)) {
      current.push_back(static_cast<char>(std::tolower(c)));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

HashedEmbeddingProvider::HashedEmbeddingProvider(int dim, uint64_t seed,
                                                 int max_tokens)
    : dim_(dim), seed_(seed), max_tokens_(max_tokens) {
  if (dim <= 0) throw ConfigError("embeddings.dim", "must be positive");
  if (max_tokens <= 0) {
    throw ConfigError("embeddings.max_tokens", "must be positive");
  }
}

void HashedEmbeddingProvider::TokenRow(std::string_view token,
                                       float* out) const {
  CounterRng stream(Hash64(token, seed_));
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim_));
  for (int k = 0; k < dim_; ++k) {
    out[k] = static_cast<float>((stream.NextUnit() - 0.5) * scale);
  }
}

EmbeddingMatrix HashedEmbeddingProvider::EmbedText(std::string_view text) const {
  auto tokens = Tokenize(text);
  if (tokens.empty()) tokens.emplace_back();
  const auto rows = std::min<std::size_t>(tokens.size(), max_tokens_);
  EmbeddingMatrix m(rows, dim_);
  for (std::size_t r = 0; r < rows; ++r) TokenRow(tokens[r], m.row(r).data());
  return m;
}

EmbeddingMatrix HashedEmbeddingProvider::Embed(const NewsItem& item) const {
  return EmbedText(item.title);
}

struct NembWriter::Impl {
  std::ofstream out;
  std::filesystem::path path;
  uint32_t dim;
  uint32_t count = 0;
  bool finished = false;
};

NembWriter::NembWriter(const std::filesystem::path& path, uint32_t dim)
    : impl_(std::make_unique<Impl>()) {
  if (dim == 0) throw FormatError("NEMB dim must be positive");
  impl_->path = path;
  impl_->dim = dim;
  impl_->out.open(path, std::ios::binary | std::ios::trunc);
  if (!impl_->out) throw Error("cannot write '" + path.string() + "'");
  impl_->out.write(kNembMagic, 4);
  PutU32(impl_->out, kNembVersion);
  PutU32(impl_->out, dim);
  PutU32(impl_->out, 0);
}

NembWriter::~NembWriter() {
  if (impl_ && !impl_->finished) {
    try {
      Finish();
    } catch (...) {
    }
  }
}

void NembWriter::Add(std::string_view id, const EmbeddingMatrix& tokens) {
  if (id.empty() || id.size() > 0xffff) {
    throw FormatError("NEMB id length must be in [1, 65535]");
  }
  if (tokens.cols() != static_cast<Eigen::Index>(impl_->dim)) {
    throw DimensionError("NEMB entry '" + std::string(id) + "' has width " +
                         std::to_string(tokens.cols()) + ", store dim is " +
                         std::to_string(impl_->dim));
  }
  if (tokens.rows() < 1) {
    throw EmptyInputError("NEMB entry '" + std::string(id) + "' has no rows");
  }
  auto& out = impl_->out;
  PutU16(out, static_cast<uint16_t>(id.size()));
  out.write(id.data(), static_cast<std::streamsize>(id.size()));
  PutU32(out, static_cast<uint32_t>(tokens.rows()));
  for (Eigen::Index r = 0; r < tokens.rows(); ++r) {
    for (Eigen::Index c = 0; c < tokens.cols(); ++c) {
      PutU32(out, std::bit_cast<uint32_t>(tokens(r, c)));
    }
  }
  ++impl_->count;
}

void NembWriter::Finish() {
  if (impl_->finished) return;
  impl_->finished = true;
  auto& out = impl_->out;
  out.seekp(12);
  PutU32(out, impl_->count);
  out.close();
  if (!out) throw Error("failed writing '" + impl_->path.string() + "'");
}

std::unique_ptr<NembStore> NembStore::Open(const std::filesystem::path& path,
                                           int max_tokens) {
  const int fd = ::open(path.c_str(), O_RDONLY);
  if (fd < 0) throw Error("cannot open '" + path.string() + "'");
  struct stat st {};
  if (::fstat(fd, &st) != 0) {
    ::close(fd);
    throw Error("cannot stat '" + path.string() + "'");
  }
  const auto size = static_cast<std::size_t>(st.st_size);
  if (size < kHeaderBytes) {
    ::close(fd);
    throw FormatError("'" + path.string() + "' is too short for a NEMB header");
  }
  void* map = ::mmap(nullptr, size, PROT_READ, MAP_PRIVATE, fd, 0);
  ::close(fd);
  if (map == MAP_FAILED) throw Error("cannot map '" + path.string() + "'");

  std::unique_ptr<NembStore> store(new NembStore());
  store->data_ = static_cast<const unsigned char*>(map);
  store->size_ = size;
  store->max_tokens_ = max_tokens;

  const unsigned char* p = store->data_;
  if (std::memcmp(p, kNembMagic, 4) != 0) {
    throw FormatError("bad NEMB magic in '" + path.string() + "'");
  }
  store->header_.version = GetU32(p + 4);
  store->header_.dim = GetU32(p + 8);
  store->header_.count = GetU32(p + 12);
  if (store->header_.version != kNembVersion) {
    throw FormatError("unsupported NEMB version " +
                      std::to_string(store->header_.version));
  }
  if (store->header_.dim == 0) throw FormatError("NEMB dim must be positive");

  std::size_t off = kHeaderBytes;
  auto need = [&](std::size_t bytes) {
    if (size - off < bytes) {
      throw CorruptionError("truncated NEMB record at offset " +
                            std::to_string(off));
    }
  };
  const std::size_t row_bytes = 4ull * store->header_.dim;
  for (uint32_t e = 0; e < store->header_.count; ++e) {
    const std::size_t record_start = off;
    need(2);
    const uint16_t id_len = GetU16(p + off);
    off += 2;
    need(id_len);
    std::string id(reinterpret_cast<const char*>(p + off), id_len);
    off += id_len;
    need(4);
    const uint32_t rows = GetU32(p + off);
    off += 4;
    if (rows == 0) {
      throw CorruptionError("NEMB record with zero rows at offset " +
                            std::to_string(record_start));
    }
    need(rows * row_bytes);
    if (!store->index_.emplace(std::move(id), Record{off, rows}).second) {
      throw CorruptionError("duplicate NEMB id at offset " +
                            std::to_string(record_start));
    }
    off += rows * row_bytes;
  }
  if (off != size) {
    throw CorruptionError("trailing bytes after last NEMB record at offset " +
                          std::to_string(off));
  }
  return store;
}

NembStore::~NembStore() {
  if (data_ != nullptr) {
    ::munmap(const_cast<unsigned char*>(data_), size_);
  }
}

bool NembStore::Contains(std::string_view id) const {
  return index_.count(std::string(id)) != 0;
}

EmbeddingMatrix NembStore::Lookup(std::string_view id) const {
  const auto it = index_.find(std::string(id));
  if (it == index_.end()) {
    throw MissingIdError("no embedding for news id '" + std::string(id) + "'");
  }
  const uint32_t rows =
      std::min<uint32_t>(it->second.rows, static_cast<uint32_t>(max_tokens_));
  EmbeddingMatrix m(rows, header_.dim);
  const unsigned char* p = data_ + it->second.offset;
  for (uint32_t r = 0; r < rows; ++r) {
    for (uint32_t c = 0; c < header_.dim; ++c, p += 4) {
      m(r, c) = std::bit_cast<float>(GetU32(p));
    }
  }
  return m;
}

}  // namespace newsrec

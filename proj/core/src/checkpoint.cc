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

#include "newsrec/checkpoint.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "newsrec/errors.h"

namespace newsrec {
namespace {

constexpr char kMagic[4] = {'N', 'C', 'K', 'P'};

template <typename T>
void PutLe(std::ostream& out, T v) {
  char b[sizeof(T)];
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    b[i] = static_cast<char>((static_cast<uint64_t>(v) >> (8 * i)) & 0xff);
  }
  out.write(b, sizeof(T));
}

class Reader {
 public:
  explicit Reader(std::vector<unsigned char> bytes) : bytes_(std::move(bytes)) {}

  template <typename T>
  T Le() {
    Need(sizeof(T));
    uint64_t v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      v |= static_cast<uint64_t>(bytes_[off_ + i]) << (8 * i);
    }
    off_ += sizeof(T);
    return static_cast<T>(v);
  }

  std::string Bytes(std::size_t n) {
    Need(n);
    std::string s(reinterpret_cast<const char*>(bytes_.data() + off_), n);
    off_ += n;
    return s;
  }

  bool AtEnd() const { return off_ == bytes_.size(); }
  std::size_t offset() const { return off_; }

 private:
  void Need(std::size_t n) const {
    if (bytes_.size() - off_ < n) {
      throw CorruptionError("truncated checkpoint at offset " +
                            std::to_string(off_));
    }
  }

  std::vector<unsigned char> bytes_;
  std::size_t off_ = 0;
};

}  // namespace

void SaveCheckpoint(const std::filesystem::path& path, ModelParams& params,
                    uint64_t config_hash) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  const auto blocks = params.Blocks();
  out.write(kMagic, 4);
  PutLe<uint32_t>(out, kCheckpointVersion);
  PutLe<uint64_t>(out, config_hash);
  PutLe<uint32_t>(out, static_cast<uint32_t>(blocks.size()));
  for (const auto& b : blocks) {
    PutLe<uint16_t>(out, static_cast<uint16_t>(b.name.size()));
    out.write(b.name.data(), static_cast<std::streamsize>(b.name.size()));
    PutLe<uint32_t>(out, static_cast<uint32_t>(b.rows));
    PutLe<uint32_t>(out, static_cast<uint32_t>(b.cols));
    for (Eigen::Index k = 0; k < b.size(); ++k) {
      PutLe<uint64_t>(out, std::bit_cast<uint64_t>(b.data[k]));
    }
  }
  out.close();
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

uint64_t LoadCheckpoint(const std::filesystem::path& path, ModelParams& params) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open checkpoint '" + path.string() + "'");
  Reader r(std::vector<unsigned char>(std::istreambuf_iterator<char>(in), {}));

  if (r.Bytes(4) != std::string(kMagic, 4)) {
    throw FormatError("bad checkpoint magic in '" + path.string() + "'");
  }
  const auto version = r.Le<uint32_t>();
  if (version != kCheckpointVersion) {
    throw FormatError("unsupported checkpoint version " + std::to_string(version));
  }
  const auto hash = r.Le<uint64_t>();
  const auto count = r.Le<uint32_t>();
  const auto blocks = params.Blocks();
  if (count != blocks.size()) {
    throw DimensionError("checkpoint has " + std::to_string(count) +
                         " blocks, model expects " +
                         std::to_string(blocks.size()));
  }
  for (const auto& b : blocks) {
    const auto name = r.Bytes(r.Le<uint16_t>());
    const auto rows = r.Le<uint32_t>();
    const auto cols = r.Le<uint32_t>();
    if (name != b.name || rows != b.rows || cols != b.cols) {
      throw DimensionError("checkpoint block '" + name + "' [" +
                           std::to_string(rows) + "x" + std::to_string(cols) +
                           "] does not match model block '" + b.name + "' [" +
                           std::to_string(b.rows) + "x" +
                           std::to_string(b.cols) + "]");
    }
    for (Eigen::Index k = 0; k < b.size(); ++k) {
      b.data[k] = std::bit_cast<double>(r.Le<uint64_t>());
    }
  }
  if (!r.AtEnd()) {
    throw CorruptionError("trailing bytes in checkpoint at offset " +
                          std::to_string(r.offset()));
  }
  return hash;
}

}  // namespace newsrec

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

#ifndef NEWSREC_CHECKPOINT_H_
#define NEWSREC_CHECKPOINT_H_

#include <cstdint>
#include <filesystem>

#include "newsrec/model.h"

namespace newsrec {

// Binary checkpoint, little-endian:
//   "NCKP" | u32 version=1 | u64 config_hash | u32 block_count
//   block_count x ( u16 name_len | name | u32 rows | u32 cols |
//                   rows*cols float64, column-major )
inline constexpr uint32_t kCheckpointVersion = 1;

void SaveCheckpoint(const std::filesystem::path& path, ModelParams& params,
                    uint64_t config_hash);

// Reads the checkpoint into `params`, whose block names and shapes must match
// exactly. Returns the stored config hash. Throws FormatError /
// CorruptionError / DimensionError.
uint64_t LoadCheckpoint(const std::filesystem::path& path, ModelParams& params);

}  // namespace newsrec

#endif  // NEWSREC_CHECKPOINT_H_

// Copyright 2026 The milpret Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Checkpoint layout (all integers and floats little-endian):
//   "MILPEMB1"
//   int32 x 9: emb_size gcn_layers sampled_nodes attn_layers attn_heads
//              ffn_dim out_dim batch_size epochs
//   float64 x 3: temperature lr split_ratio
//   uint64: seed
//   uint32: tensor count, then per tensor in declaration order:
//     uint32 rows, uint32 cols, rows * cols float64 in row-major order

#include <cstdint>
#include <filesystem>
#include <string>

#include "milpret/embed/model.hpp"

namespace milpret::embed {

std::string serialize_checkpoint(const ModelParams& params);
// Throws kCorruptLibrary for malformed bytes and kInvalidConfig for a bad config.
ModelParams deserialize_checkpoint(const std::string& bytes);

void save_checkpoint(const ModelParams& params, const std::filesystem::path& path);
ModelParams load_checkpoint(const std::filesystem::path& path);

// FNV-1a 64 over the serialized checkpoint, as 16 hex digits.
std::string checkpoint_checksum(const ModelParams& params);
std::string fnv1a_hex(std::string_view bytes);

}  // namespace milpret::embed

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

// On-disk layout of a library directory:
//   manifest.json     format_version, model checksum/ref, embedding dim and
//                     one record per entry (class_id, generator params and
//                     seed, description, instance files and descriptions,
//                     embedding file and its FNV-1a checksum, feasible flags)
//   <class>/<class>_<i>.mps
//   <class>/embeddings.bin   "MILPVEC1", uint32 D, uint32 count, then
//                            count * D little-endian float32

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "milpret/core/instance.hpp"
#include "milpret/embed/model.hpp"
#include "milpret/generators/registry.hpp"
#include "milpret/graph/bipartite.hpp"
#include "milpret/lp/branch_and_bound.hpp"

namespace milpret::retrieval {

inline constexpr int kLibraryFormatVersion = 1;

struct LibraryEntry {
  std::string class_id;
  gen::GeneratorSpec generator;  // the retrievable generator (base params)
  std::string description;
  std::vector<std::string> instance_files;  // relative to the library dir
  std::vector<std::string> instance_descriptions;
  std::vector<Eigen::VectorXf> embeddings;  // unit norm, stored as float32
  std::vector<bool> feasible;
  std::string embedding_file;
  // In memory only; written as MPS by save_library, loaded on request.
  std::vector<MilpInstance> instances;
};

struct Library {
  int format_version = kLibraryFormatVersion;
  std::string model_checksum;
  std::string model_ref;
  int dim = 0;
  std::vector<LibraryEntry> entries;
};

struct BuildOptions {
  lp::MilpLimits budget;  // feasibility check per instance
  std::uint64_t sample_seed = 0;
  graph::FeaturizeOptions features;
  bool jitter = true;
  int threads = 0;
  std::string model_ref;
  std::vector<std::string>* warnings = nullptr;
};

// For every class spec, generates per_class instances (jittered seeds), drops those
// whose feasibility is not confirmed, and embeds the rest. Classes left
// without instances are dropped with a warning; kEmptyLibrary if none remain.
Library build_library(const std::vector<gen::GeneratorSpec>& classes, int per_class,
                      const embed::ModelParams& params, const BuildOptions& opts = {});

// Writes manifest, MPS files and embedding binaries (directories created).
void save_library(const Library& lib, const std::filesystem::path& dir);

// Validates version (kVersionMismatch), embedding headers, sizes, checksums
// and dimensions (kCorruptLibrary). kEmptyLibrary for a missing or empty
// library.
Library load_library(const std::filesystem::path& dir, bool load_instances = false);

std::string encode_embeddings(const std::vector<Eigen::VectorXf>& vecs, int dim);
std::vector<Eigen::VectorXf> decode_embeddings(const std::string& bytes, int dim, std::size_t count);

}  // namespace milpret::retrieval

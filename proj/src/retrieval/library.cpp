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

#include "milpret/retrieval/library.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "milpret/core/error.hpp"
#include "milpret/core/mps.hpp"
#include "milpret/embed/checkpoint.hpp"
#include "milpret/embed/train.hpp"
#include "milpret/retrieval/corpus.hpp"

namespace milpret::retrieval {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr char kVecMagic[8] = {'M', 'I', 'L', 'P', 'V', 'E', 'C', '1'};

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) fail(ErrorKind::kCorruptLibrary, "cannot read " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& bytes) {
  std::ofstream out(p, std::ios::binary);
  if (!out) fail(ErrorKind::kIo, "cannot write " + p.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) fail(ErrorKind::kIo, "failed writing " + p.string());
}

}  // namespace

std::string encode_embeddings(const std::vector<Eigen::VectorXf>& vecs, int dim) {
  static_assert(std::endian::native == std::endian::little, "little-endian host required");
  std::string out(kVecMagic, sizeof(kVecMagic));
  const auto put32 = [&](std::uint32_t v) {
    char b[4];
    std::memcpy(b, &v, 4);
    out.append(b, 4);
  };
  put32(static_cast<std::uint32_t>(dim));
  put32(static_cast<std::uint32_t>(vecs.size()));
  for (const auto& v : vecs) {
    expects(v.size() == dim, ErrorKind::kShapeMismatch, "embedding dimension mismatch");
    out.append(reinterpret_cast<const char*>(v.data()), sizeof(float) * static_cast<std::size_t>(dim));
  }
  return out;
}

std::vector<Eigen::VectorXf> decode_embeddings(const std::string& bytes, int dim, std::size_t count) {
  const std::size_t header = sizeof(kVecMagic) + 8;
  if (bytes.size() < header || std::memcmp(bytes.data(), kVecMagic, sizeof(kVecMagic)) != 0) {
    fail(ErrorKind::kCorruptLibrary, "embedding file has a bad header");
  }
  std::uint32_t d = 0, n = 0;
  std::memcpy(&d, bytes.data() + 8, 4);
  std::memcpy(&n, bytes.data() + 12, 4);
  if (static_cast<int>(d) != dim || n != count) {
    fail(ErrorKind::kCorruptLibrary, "embedding file header disagrees with the manifest");
  }
  if (bytes.size() != header + sizeof(float) * static_cast<std::size_t>(d) * n) {
    fail(ErrorKind::kCorruptLibrary, "embedding file has the wrong size");
  }
  std::vector<Eigen::VectorXf> out(n, Eigen::VectorXf(static_cast<Eigen::Index>(d)));
  for (std::uint32_t k = 0; k < n; ++k) {
    std::memcpy(out[k].data(), bytes.data() + header + sizeof(float) * d * k, sizeof(float) * d);
    const float norm = out[k].norm();
    if (!std::isfinite(norm) || std::abs(norm - 1.0f) > 1e-3f) {
      fail(ErrorKind::kCorruptLibrary, "stored embedding is not unit norm");
    }
  }
  return out;
}

Library build_library(const std::vector<gen::GeneratorSpec>& classes, int per_class,
                      const embed::ModelParams& params, const BuildOptions& opts) {
  expects(per_class >= 1, ErrorKind::kInvalidParams, "per_class must be at least 1");
  std::set<std::string> seen;
  for (const auto& spec : classes) {
    gen::validate_params(spec.class_id, spec.params);
    expects(seen.insert(spec.class_id).second, ErrorKind::kInvalidParams,
            "duplicate library class " + spec.class_id);
  }
  struct Slot {
    gen::GeneratorSpec spec;
    MilpInstance inst;
    bool keep = false;
    Eigen::VectorXf emb;
  };
  const int total = static_cast<int>(classes.size()) * per_class;
  std::vector<Slot> slots(static_cast<std::size_t>(total));
  embed::parallel_for(total, opts.threads, [&](int k) {
    const auto& base = classes[static_cast<std::size_t>(k / per_class)];
    const int i = k % per_class;
    const std::uint64_t s = instance_seed(base.seed, base.class_id, i);
    const gen::Params p = opts.jitter ? gen::jitter_params(base.class_id, base.params, s) : base.params;
    Slot& slot = slots[static_cast<std::size_t>(k)];
    slot.spec = gen::make_spec(base.class_id, p, s);
    slot.inst = gen::generate_instance(slot.spec);
    if (lp::check_feasible(slot.inst, opts.budget) != lp::Feasibility::kFeasible) return;
    slot.keep = true;
    slot.emb = embed::encode_milp(params, graph::featurize(slot.inst, opts.features), opts.sample_seed)
                   .cast<float>();
  });

  Library lib;
  lib.model_checksum = embed::checkpoint_checksum(params);
  lib.model_ref = opts.model_ref;
  lib.dim = params.cfg.out_dim;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const auto& base = classes[c];
    LibraryEntry e;
    e.class_id = base.class_id;
    e.generator = gen::make_spec(base.class_id, base.params, base.seed);
    e.description = e.generator.description;
    e.embedding_file = base.class_id + "/embeddings.bin";
    for (int i = 0; i < per_class; ++i) {
      Slot& slot = slots[c * static_cast<std::size_t>(per_class) + static_cast<std::size_t>(i)];
      if (!slot.keep) continue;
      e.instance_files.push_back(base.class_id + "/" + base.class_id + "_" + std::to_string(i) + ".mps");
      e.instance_descriptions.push_back(slot.spec.description);
      e.embeddings.push_back(std::move(slot.emb));
      e.feasible.push_back(true);
      e.instances.push_back(std::move(slot.inst));
    }
    if (e.embeddings.empty()) {
      if (opts.warnings) opts.warnings->push_back("class " + base.class_id + " dropped: no feasible instances");
      continue;
    }
    lib.entries.push_back(std::move(e));
  }
  if (lib.entries.empty()) fail(ErrorKind::kEmptyLibrary, "every class was dropped; library is empty");
  return lib;
}

void save_library(const Library& lib, const fs::path& dir) {
  expects(!lib.entries.empty(), ErrorKind::kEmptyLibrary, "refusing to save an empty library");
  fs::create_directories(dir);
  json manifest;
  manifest["format_version"] = lib.format_version;
  manifest["model_checksum"] = lib.model_checksum;
  manifest["model_ref"] = lib.model_ref;
  manifest["dim"] = lib.dim;
  manifest["entries"] = json::array();
  for (const auto& e : lib.entries) {
    fs::create_directories(dir / e.class_id);
    const auto bytes = encode_embeddings(e.embeddings, lib.dim);
    write_file(dir / e.embedding_file, bytes);
    for (std::size_t i = 0; i < e.instances.size() && i < e.instance_files.size(); ++i) {
      write_mps_file(e.instances[i], dir / e.instance_files[i]);
    }
    json params = json::object();
    for (const auto& [k, v] : e.generator.params) params[k] = v;
    json flags = json::array();
    for (bool f : e.feasible) flags.push_back(f);
    manifest["entries"].push_back({
        {"class_id", e.class_id},
        {"generator", {{"params", params}, {"seed", e.generator.seed}}},
        {"description", e.description},
        {"instance_files", e.instance_files},
        {"instance_descriptions", e.instance_descriptions},
        {"embedding_file", e.embedding_file},
        {"embedding_checksum", embed::fnv1a_hex(bytes)},
        {"feasible", flags},
    });
  }
  write_file(dir / "manifest.json", manifest.dump(2) + "\n");
}

Library load_library(const fs::path& dir, bool load_instances) {
  if (!fs::exists(dir / "manifest.json")) {
    fail(ErrorKind::kEmptyLibrary, "no library manifest in " + dir.string());
  }
  json m;
  try {
    m = json::parse(read_file(dir / "manifest.json"));
  } catch (const json::exception& ex) {
    fail(ErrorKind::kCorruptLibrary, std::string("manifest is not valid JSON: ") + ex.what());
  }
  Library lib;
  try {
    lib.format_version = m.at("format_version").get<int>();
    if (lib.format_version != kLibraryFormatVersion) {
      fail(ErrorKind::kVersionMismatch, "library format_version " + std::to_string(lib.format_version) +
                                            " is not supported (expected " +
                                            std::to_string(kLibraryFormatVersion) + ")");
    }
    lib.model_checksum = m.at("model_checksum").get<std::string>();
    lib.model_ref = m.value("model_ref", "");
    lib.dim = m.at("dim").get<int>();
    if (lib.dim < 1) fail(ErrorKind::kCorruptLibrary, "bad embedding dimension");
    std::set<std::string> seen;
    for (const auto& je : m.at("entries")) {
      LibraryEntry e;
      e.class_id = je.at("class_id").get<std::string>();
      if (!seen.insert(e.class_id).second) fail(ErrorKind::kCorruptLibrary, "duplicate class " + e.class_id);
      gen::Params params;
      for (const auto& [k, v] : je.at("generator").at("params").items()) params[k] = v.get<double>();
      e.generator = gen::make_spec(e.class_id, params, je.at("generator").at("seed").get<std::uint64_t>());
      e.description = je.at("description").get<std::string>();
      e.instance_files = je.at("instance_files").get<std::vector<std::string>>();
      e.instance_descriptions = je.at("instance_descriptions").get<std::vector<std::string>>();
      e.embedding_file = je.at("embedding_file").get<std::string>();
      for (const auto& f : je.at("feasible")) e.feasible.push_back(f.get<bool>());
      if (e.instance_files.empty() || e.feasible.size() != e.instance_files.size() ||
          e.instance_descriptions.size() != e.instance_files.size()) {
        fail(ErrorKind::kCorruptLibrary, "entry " + e.class_id + " has inconsistent instance lists");
      }
      const auto bytes = read_file(dir / e.embedding_file);
      if (embed::fnv1a_hex(bytes) != je.at("embedding_checksum").get<std::string>()) {
        fail(ErrorKind::kCorruptLibrary, "checksum mismatch for " + e.embedding_file);
      }
      e.embeddings = decode_embeddings(bytes, lib.dim, e.instance_files.size());
      if (load_instances) {
        for (const auto& f : e.instance_files) e.instances.push_back(read_mps_file(dir / f));
      }
      lib.entries.push_back(std::move(e));
    }
  } catch (const json::exception& ex) {
    fail(ErrorKind::kCorruptLibrary, std::string("malformed manifest: ") + ex.what());
  } catch (const Error& ex) {
    if (ex.kind() == ErrorKind::kUnknownClass || ex.kind() == ErrorKind::kInvalidParams) {
      fail(ErrorKind::kCorruptLibrary, std::string("manifest generator is invalid: ") + ex.what());
    }
    throw;
  }
  if (lib.entries.empty()) fail(ErrorKind::kEmptyLibrary, "library has no entries");
  return lib;
}

}  // namespace milpret::retrieval

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

#include "milpret/embed/checkpoint.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "milpret/core/error.hpp"

namespace milpret::embed {

namespace {

constexpr char kMagic[8] = {'M', 'I', 'L', 'P', 'E', 'M', 'B', '1'};

template <typename T>
void put(std::string& out, T v) {
  static_assert(std::endian::native == std::endian::little, "little-endian host required");
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  out.append(buf, sizeof(T));
}

class Reader {
 public:
  explicit Reader(const std::string& s) : s_(s) {}
  template <typename T>
  T get() {
    if (pos_ + sizeof(T) > s_.size()) fail(ErrorKind::kCorruptLibrary, "checkpoint is truncated");
    T v;
    std::memcpy(&v, s_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return v;
  }
  std::size_t remaining() const { return s_.size() - pos_; }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string serialize_checkpoint(const ModelParams& p) {
  std::string out(kMagic, sizeof(kMagic));
  const ModelConfig& c = p.cfg;
  for (int v : {c.emb_size, c.gcn_layers, c.sampled_nodes, c.attn_layers, c.attn_heads, c.ffn_dim,
                c.out_dim, c.batch_size, c.epochs}) {
    put<std::int32_t>(out, v);
  }
  put<double>(out, c.temperature);
  put<double>(out, c.lr);
  put<double>(out, c.split_ratio);
  put<std::uint64_t>(out, c.seed);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(p.tensors.size()));
  for (const auto& t : p.tensors) {
    put<std::uint32_t>(out, static_cast<std::uint32_t>(t.rows()));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(t.cols()));
    for (Eigen::Index i = 0; i < t.rows(); ++i) {
      for (Eigen::Index j = 0; j < t.cols(); ++j) put<double>(out, t(i, j));
    }
  }
  return out;
}

ModelParams deserialize_checkpoint(const std::string& bytes) {
  if (bytes.size() < sizeof(kMagic) || std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) != 0) {
    fail(ErrorKind::kCorruptLibrary, "not a model checkpoint (bad magic)");
  }
  Reader r(bytes);
  for (std::size_t i = 0; i < sizeof(kMagic); ++i) r.get<char>();
  ModelConfig c;
  c.emb_size = r.get<std::int32_t>();
  c.gcn_layers = r.get<std::int32_t>();
  c.sampled_nodes = r.get<std::int32_t>();
  c.attn_layers = r.get<std::int32_t>();
  c.attn_heads = r.get<std::int32_t>();
  c.ffn_dim = r.get<std::int32_t>();
  c.out_dim = r.get<std::int32_t>();
  c.batch_size = r.get<std::int32_t>();
  c.epochs = r.get<std::int32_t>();
  c.temperature = r.get<double>();
  c.lr = r.get<double>();
  c.split_ratio = r.get<double>();
  c.seed = r.get<std::uint64_t>();
  // init_model validates the config and provides names and shapes.
  ModelParams p = init_model(c);
  const auto count = r.get<std::uint32_t>();
  if (count != p.tensors.size()) fail(ErrorKind::kCorruptLibrary, "checkpoint tensor count mismatch");
  for (auto& t : p.tensors) {
    const auto rows = r.get<std::uint32_t>();
    const auto cols = r.get<std::uint32_t>();
    if (rows != t.rows() || cols != t.cols()) {
      fail(ErrorKind::kCorruptLibrary, "checkpoint tensor shape mismatch");
    }
    for (Eigen::Index i = 0; i < t.rows(); ++i) {
      for (Eigen::Index j = 0; j < t.cols(); ++j) t(i, j) = r.get<double>();
    }
  }
  if (r.remaining() != 0) fail(ErrorKind::kCorruptLibrary, "trailing bytes after checkpoint");
  return p;
}

void save_checkpoint(const ModelParams& params, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::kIo, "cannot write " + path.string());
  const auto bytes = serialize_checkpoint(params);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) fail(ErrorKind::kIo, "failed writing " + path.string());
}

ModelParams load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIo, "cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return deserialize_checkpoint(ss.str());
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char ch : bytes) {
    h ^= static_cast<unsigned char>(ch);
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string checkpoint_checksum(const ModelParams& params) {
  return fnv1a_hex(serialize_checkpoint(params));
}

}  // namespace milpret::embed

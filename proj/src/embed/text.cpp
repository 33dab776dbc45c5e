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

#include "milpret/embed/text.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "milpret/core/error.hpp"
#include "milpret/generators/rng.hpp"

namespace milpret::embed {

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    const auto u = static_cast<unsigned char>(ch);
    if (std::isalnum(u) && u < 128) {
      cur.push_back(static_cast<char>(std::tolower(u)));
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::uint64_t token_hash(std::string_view token) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char ch : token) {
    h ^= static_cast<unsigned char>(ch);
    h *= 0x100000001b3ULL;
  }
  return gen::mix64(h);
}

std::vector<double> numeric_literals(std::string_view text) {
  std::vector<double> out;
  std::size_t i = 0;
  const auto digit = [&](std::size_t k) {
    return k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]));
  };
  while (i < text.size()) {
    // Digits glued to letters ("x1") belong to a word, not a number.
    if (!digit(i) || (i > 0 && std::isalpha(static_cast<unsigned char>(text[i - 1])))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (digit(j)) ++j;
    if (j + 1 < text.size() && text[j] == '.' && digit(j + 1)) {
      ++j;
      while (digit(j)) ++j;
    }
    if (j < text.size() && std::isalpha(static_cast<unsigned char>(text[j]))) {
      while (j < text.size() && std::isalnum(static_cast<unsigned char>(text[j]))) ++j;
      i = j;
      continue;
    }
    double v = 0.0;
    std::from_chars(text.data() + i, text.data() + j, v);
    out.push_back(v);
    i = j;
  }
  return out;
}

TextEmbedder::TextEmbedder(int dim, double magnitude_weight)
    : dim_(dim), magnitude_weight_(magnitude_weight) {
  expects(dim >= 1, ErrorKind::kInvalidConfig, "text embedding dimension must be positive");
  expects(magnitude_weight >= 0.0 && std::isfinite(magnitude_weight), ErrorKind::kInvalidConfig,
          "magnitude weight must be finite and non-negative");
}

Eigen::VectorXd TextEmbedder::encode(std::string_view text) const {
  const auto tokens = tokenize(text);
  if (tokens.empty()) fail(ErrorKind::kEmptyText, "text has no tokens");
  Eigen::VectorXd v = Eigen::VectorXd::Zero(dim_);
  for (const auto& tok : tokens) {
    const std::uint64_t h = token_hash(tok);
    v(static_cast<Eigen::Index>(h % static_cast<std::uint64_t>(dim_))) += (h >> 63) ? -1.0 : 1.0;
  }
  if (magnitude_weight_ > 0.0) {
    const auto add = [&](long bucket, double w) {
      const std::uint64_t h = token_hash("#mag" + std::to_string(bucket));
      v(static_cast<Eigen::Index>(h % static_cast<std::uint64_t>(dim_))) += (h >> 63) ? -w : w;
    };
    for (double x : numeric_literals(text)) {
      if (!(x > 0.0)) continue;
      const double t = 2.0 * std::log2(x);
      const double lo = std::floor(t);
      add(static_cast<long>(lo), magnitude_weight_ * (1.0 - (t - lo)));
      add(static_cast<long>(lo) + 1, magnitude_weight_ * (t - lo));
    }
  }
  const double norm = v.norm();
  // Every token may cancel out in pathological cases; fall back to the first
  // token's bucket so the output stays unit-norm.
  if (norm == 0.0) {
    v.setZero();
    v(static_cast<Eigen::Index>(token_hash(tokens[0]) % static_cast<std::uint64_t>(dim_))) = 1.0;
    return v;
  }
  return v / norm;
}

std::map<std::string, Eigen::VectorXd> parse_text_vectors(std::string_view content) {
  std::map<std::string, Eigen::VectorXd> out;
  Eigen::Index dim = -1;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < content.size()) {
    const std::size_t end = std::min(content.find('\n', pos), content.size());
    std::string_view line = content.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    const std::size_t comma = line.find(',');
    expects(comma != std::string_view::npos && comma > 0, ErrorKind::kShapeMismatch,
            "text vector line " + std::to_string(line_no) + " lacks an id");
    std::vector<double> vals;
    std::string_view rest = line.substr(comma + 1);
    while (true) {
      const std::size_t c = rest.find(',');
      std::string_view field = rest.substr(0, c);
      while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
      double v = 0.0;
      const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
      expects(res.ec == std::errc() && res.ptr == field.data() + field.size(),
              ErrorKind::kShapeMismatch, "bad number on text vector line " + std::to_string(line_no));
      vals.push_back(v);
      if (c == std::string_view::npos) break;
      rest = rest.substr(c + 1);
    }
    const auto d = static_cast<Eigen::Index>(vals.size());
    if (dim < 0) dim = d;
    expects(d == dim, ErrorKind::kShapeMismatch, "text vectors have inconsistent dimensions");
    Eigen::VectorXd vec = Eigen::Map<const Eigen::VectorXd>(vals.data(), d);
    const double norm = vec.norm();
    expects(norm > 0.0, ErrorKind::kShapeMismatch, "zero text vector on line " + std::to_string(line_no));
    out[std::string(line.substr(0, comma))] = vec / norm;
  }
  return out;
}

std::map<std::string, Eigen::VectorXd> load_text_vectors(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIo, "cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_text_vectors(ss.str());
}

}  // namespace milpret::embed

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

// Frozen bag-of-words text embedder with signed feature hashing.
//
// Tokens are maximal runs of ASCII letters and digits, lowercased. Each token
// is hashed with FNV-1a 64 followed by the SplitMix64 finaliser; the bucket
// is hash % D and bit 63 selects the sign (set -> -1). Counts are summed and
// the vector is L2-normalised.
//
// Numeric literals (digits with an optional fraction) additionally add soft
// magnitude features: with t = 2 * log2(x) for x > 0, weight
// magnitude_weight * (1 - frac(t)) goes to the hashed token "#mag<floor(t)>"
// and magnitude_weight * frac(t) to "#mag<floor(t) + 1>". Nearby values then
// share buckets, so descriptions differing only in sizes stay close but
// not identical. magnitude_weight = 0 disables this.

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace milpret::embed {

std::vector<std::string> tokenize(std::string_view text);
std::uint64_t token_hash(std::string_view token);

class TextEmbedder {
 public:
  static constexpr double kDefaultMagnitudeWeight = 3.0;

  explicit TextEmbedder(int dim, double magnitude_weight = kDefaultMagnitudeWeight);
  int dim() const { return dim_; }
  double magnitude_weight() const { return magnitude_weight_; }
  // Throws kEmptyText when the text has no tokens.
  Eigen::VectorXd encode(std::string_view text) const;

 private:
  int dim_;
  double magnitude_weight_;
};

// Numeric literals of the text in order of appearance ("0.05" is one value).
std::vector<double> numeric_literals(std::string_view text);

// External text vectors: one per line, "id,v1,v2,...". Vectors are
// L2-normalised on load; all must share one dimension (kShapeMismatch).
std::map<std::string, Eigen::VectorXd> parse_text_vectors(std::string_view content);
std::map<std::string, Eigen::VectorXd> load_text_vectors(const std::filesystem::path& path);

}  // namespace milpret::embed

// Copyright 2026 The dynmis Authors
//
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

#ifndef DYNMIS_PERMUTATION_HPP_
#define DYNMIS_PERMUTATION_HPP_

#include <bit>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace dynmis {

using Vertex = std::uint32_t;
using Rank = std::uint32_t;

/// Level index of a rank: k with 2^k < p <= 2^(k+1), or -1 for p == 1.
/// Level -1 stands for the full graph.
using Level = int;

inline constexpr Level kFullGraphLevel = -1;

/// Seeded 64-bit generator used everywhere randomness is needed. Its output
/// sequence is fixed by the C++ standard, which makes every run reproducible
/// across standard library implementations.
using Rng = std::mt19937_64;

/// Unbiased integer in [0, bound) by rejection sampling. Unlike
/// std::uniform_int_distribution the mapping is part of this library, so
/// results do not depend on the standard library vendor.
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);

/// Number of residual-subgraph levels for n vertices: ceil(log2 n).
constexpr int num_levels(std::uint32_t n) {
  return n <= 1 ? 0 : static_cast<int>(std::bit_width(n - 1));
}

/// Level of a rank without range checks. For any p >= 1 this is
/// ceil(log2 p) - 1, which is -1 for p == 1.
constexpr Level level_of(std::uint64_t p) {
  return static_cast<Level>(std::bit_width(p - 1)) - 1;
}

/// A uniformly random total order over the vertex set [0, n).
///
/// Ranks are 1-based: rank(v) is v's position in the greedy scan. The order is
/// a pure function of (n, seed): the generator above drives a Fisher-Yates
/// shuffle of the identity with uniform_below as the index source.
class Permutation {
 public:
  /// Throws std::invalid_argument when n == 0.
  static Permutation generate(std::uint32_t n, std::uint64_t seed);

  /// Builds from an explicit rank map (rank[v] in [1, n], bijective).
  /// Throws std::invalid_argument if the map is not a bijection.
  static Permutation from_ranks(std::span<const Rank> ranks,
                                std::uint64_t seed = 0);

  std::uint32_t size() const { return static_cast<std::uint32_t>(rank_.size()); }
  std::uint64_t seed() const { return seed_; }
  int levels() const { return num_levels(size()); }

  Rank rank(Vertex v) const { return rank_[v]; }
  Vertex vertex_at(Rank p) const { return inv_[p - 1]; }

  /// Level of rank p. Throws std::invalid_argument if p is not in [1, n].
  Level level_of_rank(Rank p) const;

  /// Level of vertex v's own rank.
  Level level_of_vertex(Vertex v) const { return level_of(rank_[v]); }

  /// Vertices with ranks in [i, j], ascending by rank.
  /// Throws std::invalid_argument unless 1 <= i <= j <= n.
  std::vector<Vertex> rank_range(Rank i, Rank j) const;

  std::span<const Rank> ranks() const { return rank_; }

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  Permutation(std::vector<Rank> rank, std::vector<Vertex> inv,
              std::uint64_t seed)
      : rank_(std::move(rank)), inv_(std::move(inv)), seed_(seed) {}

  std::vector<Rank> rank_;
  std::vector<Vertex> inv_;
  std::uint64_t seed_;
};

}  // namespace dynmis

#endif  // DYNMIS_PERMUTATION_HPP_

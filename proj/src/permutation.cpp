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

#include "dynmis/permutation.hpp"

#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

namespace dynmis {

std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: bound must be positive");
  // Values below `threshold` would over-represent the low residues.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % bound;
  }
}

Permutation Permutation::generate(std::uint32_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("permutation size must be positive");
  std::vector<Vertex> inv(n);
  std::iota(inv.begin(), inv.end(), Vertex{0});
  Rng rng(seed);
  for (std::uint32_t i = n - 1; i > 0; --i) {
    const auto j = static_cast<std::uint32_t>(uniform_below(rng, i + 1));
    std::swap(inv[i], inv[j]);
  }
  std::vector<Rank> rank(n);
  for (std::uint32_t p = 0; p < n; ++p) rank[inv[p]] = p + 1;
  return Permutation(std::move(rank), std::move(inv), seed);
}

Permutation Permutation::from_ranks(std::span<const Rank> ranks,
                                    std::uint64_t seed) {
  const auto n = static_cast<std::uint32_t>(ranks.size());
  if (n == 0) throw std::invalid_argument("permutation size must be positive");
  std::vector<Vertex> inv(n, n);
  for (Vertex v = 0; v < n; ++v) {
    const Rank p = ranks[v];
    if (p < 1 || p > n || inv[p - 1] != n) {
      throw std::invalid_argument("rank map is not a bijection onto [1, n]");
    }
    inv[p - 1] = v;
  }
  return Permutation(std::vector<Rank>(ranks.begin(), ranks.end()),
                     std::move(inv), seed);
}

Level Permutation::level_of_rank(Rank p) const {
  if (p < 1 || p > size()) {
    throw std::invalid_argument("rank " + std::to_string(p) +
                                " outside [1, " + std::to_string(size()) + "]");
  }
  return level_of(p);
}

std::vector<Vertex> Permutation::rank_range(Rank i, Rank j) const {
  if (i < 1 || j > size() || i > j) {
    throw std::invalid_argument("rank_range requires 1 <= i <= j <= n");
  }
  return {inv_.begin() + (i - 1), inv_.begin() + j};
}

}  // namespace dynmis

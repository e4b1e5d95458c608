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

#ifndef DYNMIS_GRAPH_TYPES_HPP_
#define DYNMIS_GRAPH_TYPES_HPP_

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include "dynmis/permutation.hpp"

namespace dynmis {

/// Undirected edge. Stored with u < v once normalized.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge normalized() const { return u < v ? Edge{u, v} : Edge{v, u}; }
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

constexpr std::uint64_t edge_key(Vertex a, Vertex b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

enum class UpdateKind : std::uint8_t { kInsert, kDelete };

/// The maintained structure is internally inconsistent: an invariant that the
/// update algorithm relies on does not hold.
class StructuralError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A maintained structure disagrees with a brute-force oracle.
class VerificationError : public std::runtime_error {
 public:
  VerificationError(const std::string& what, std::size_t event_index)
      : std::runtime_error(what), event_index_(event_index) {}
  std::size_t event_index() const { return event_index_; }

 private:
  std::size_t event_index_;
};

}  // namespace dynmis

#endif  // DYNMIS_GRAPH_TYPES_HPP_

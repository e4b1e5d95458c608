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

// Verification and measurement suites. Every suite splits into independent
// cells, one per seed (and graph or n where relevant), each owning its own
// state. kSerial runs the cells in order on the calling thread and is the
// reference; kParallel hands them to OpenMP. Results are stored by cell index,
// so both produce identical reports apart from timing fields.

#ifndef DYNMIS_SUITES_HPP_
#define DYNMIS_SUITES_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "dynmis/graph_types.hpp"
#include "dynmis/oracle.hpp"

namespace dynmis::suites {

enum class Execution { kSerial, kParallel };

// ---------------------------------------------------------------------------
// Oracle equivalence: random workloads replayed with every check enabled.

struct EquivalenceConfig {
  std::uint32_t n = 128;
  double density = 0.1;
  std::size_t events = 5000;
  std::size_t seeds = 20;
  std::uint64_t perm_seed_base = 1;
  std::uint64_t trace_seed_base = 1001;
  std::size_t check_every = 1;
};

struct EquivalenceCell {
  std::uint64_t perm_seed = 0;
  std::uint64_t trace_seed = 0;
  std::size_t updates = 0;
  std::size_t hard = 0;
  std::size_t checks = 0;
  bool ok = true;
  std::size_t failing_event = 0;
  std::string error;

  friend bool operator==(const EquivalenceCell&, const EquivalenceCell&) = default;
};

struct EquivalenceReport {
  std::vector<EquivalenceCell> cells;
  std::size_t failures() const;
  std::size_t total_checks() const;
  std::size_t total_hard() const;
};

EquivalenceReport equivalence_suite(const EquivalenceConfig& cfg, Execution exec);

// ---------------------------------------------------------------------------
// Exact expected influenced-set size over all orders of tiny graphs.

struct CatalogGraph {
  std::string name;
  oracle::StaticGraph graph;
};

/// Edgeless, path, cycle, complete and star graphs on 7 vertices plus two
/// fixed random G(7, 0.4) graphs.
std::vector<CatalogGraph> exhaustive_catalog();

struct ExhaustiveViolation {
  std::string graph;
  Vertex u = 0;
  Vertex v = 0;
  UpdateKind kind = UpdateKind::kInsert;
  std::string condition;
  oracle::Rational value;
  oracle::Rational bound;
};

struct ExhaustiveReport {
  std::size_t graphs = 0;
  std::size_t updates = 0;         // (graph, ordered endpoint pair) combinations
  std::size_t fixed_checks = 0;    // (C, A, B) conditions checked
  std::size_t window_checks = 0;   // (A, B) conditions checked
  // Largest value / bound seen; every check requires it below 1.
  oracle::Rational worst_fixed_ratio{0};
  oracle::Rational worst_window_ratio{0};
  std::vector<ExhaustiveViolation> violations;
};

/// For every catalog graph, every ordered pair (u, v) and every satisfiable
/// condition: E[|S| | rank(u) = C, A < rank(v) <= B] < n / (B - A) and
/// E[|S| | A < rank(u) < rank(v) <= B] < 2n / (B - A), exactly.
ExhaustiveReport exhaustive_suite(const std::vector<CatalogGraph>& catalog, Execution exec);

struct MonteCarloRow {
  std::uint32_t n = 0;
  Level b = 0;
  std::size_t samples = 0;      // hard-or-easy updates whose later endpoint is at level b
  double mean_s = 0;
  double scale = 0;             // n / 2^b
  double ratio = 0;             // mean_s / scale
};

/// Samples a random order and a uniformly random pair of a fixed G(n, p)
/// graph per trial and averages |S| by the later endpoint's level.
std::vector<MonteCarloRow> monte_carlo_expected_s(std::uint32_t n, double p,
                                                  std::size_t trials, std::uint64_t seed,
                                                  Execution exec);

// ---------------------------------------------------------------------------
// Degree reduction: max degree of the residual graph after the first k ranks.

struct DegreeConfig {
  std::uint32_t n = 4096;
  double p = 0.01;
  std::uint64_t graph_seed = 7;
  std::size_t seeds = 100;
  std::uint64_t perm_seed_base = 1;
  double c = 8.0;
};

struct BadEventRecord {
  std::uint64_t perm_seed = 0;
  Rank k = 0;
  std::size_t observed = 0;  // max degree of G[U]
  double threshold = 0;      // c * n * ln(n) / k
  bool exceeded = false;

  friend bool operator==(const BadEventRecord&, const BadEventRecord&) = default;
};

struct DegreeReport {
  std::vector<Rank> ks;                 // 2^0 .. 2^(L-1)
  std::vector<BadEventRecord> records;  // seed-major, then k
  std::size_t within(Rank k) const;     // seeds with observed <= threshold at k
};

DegreeReport degree_suite(const DegreeConfig& cfg, Execution exec);

// ---------------------------------------------------------------------------
// Work growth over uniform-mix runs with verification off.

struct ScalingConfig {
  std::vector<std::uint32_t> n_list{1024, 4096, 16384};
  std::size_t updates = 2000;
  std::size_t seeds = 10;
  double density = 0.01;
  std::uint64_t perm_seed_base = 1;
  std::uint64_t trace_seed_base = 5001;
};

struct ScalingRow {
  std::uint32_t n = 0;
  std::size_t updates = 0;
  std::size_t hard = 0;
  double mean_touched = 0;
  double p99_touched = 0;
  double mean_changes = 0;
  // Hard-case rows only: max degree of G_b times (|T0| + |T1|).
  double mean_bound = 0;
  double p99_bound = 0;
  double seconds = 0;
};

struct ScalingRatio {
  std::uint32_t from = 0;
  std::uint32_t to = 0;
  double touched = 0;
  double changes = 0;
  double bound = 0;
};

struct ScalingReport {
  std::vector<ScalingRow> rows;
  std::vector<ScalingRatio> ratios;  // consecutive entries of n_list
};

/// Throws std::invalid_argument unless n_list is ascending powers of two.
ScalingReport scaling_suite(const ScalingConfig& cfg, Execution exec);

}  // namespace dynmis::suites

#endif  // DYNMIS_SUITES_HPP_

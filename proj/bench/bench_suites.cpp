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

// Wall time of each suite with its serial reference loop and with OpenMP
// cells, plus a check that both give the same results.

#include <omp.h>

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "dynmis/suites.hpp"

namespace {

using namespace dynmis::suites;

template <typename F>
double timed(F&& f) {
  const auto start = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

bool same(const ExhaustiveReport& a, const ExhaustiveReport& b) {
  return a.fixed_checks == b.fixed_checks && a.window_checks == b.window_checks &&
         a.worst_fixed_ratio == b.worst_fixed_ratio &&
         a.worst_window_ratio == b.worst_window_ratio &&
         a.violations.size() == b.violations.size();
}

bool same(const ScalingReport& a, const ScalingReport& b) {
  if (a.rows.size() != b.rows.size()) return false;
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    const auto &x = a.rows[i], &y = b.rows[i];
    if (x.updates != y.updates || x.hard != y.hard || x.mean_touched != y.mean_touched ||
        x.mean_changes != y.mean_changes || x.mean_bound != y.mean_bound) {
      return false;
    }
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Serial vs parallel suite timings"};
  bool quick = false;
  app.add_flag("--quick", quick, "Small configurations");
  CLI11_PARSE(app, argc, argv);

  EquivalenceConfig eq;
  DegreeConfig deg;
  ScalingConfig sc;
  if (quick) {
    eq.n = 64;
    eq.events = 300;
    eq.seeds = 4;
    deg.n = 512;
    deg.seeds = 8;
    sc.n_list = {256, 1024};
    sc.updates = 300;
    sc.seeds = 2;
  } else {
    eq.events = 1000;
    eq.seeds = 8;
    deg.seeds = 32;
    sc.seeds = 4;
  }

  std::cout << "threads " << omp_get_max_threads() << '\n';
  std::cout << std::left << std::setw(12) << "suite" << std::right << std::setw(12)
            << "serial_s" << std::setw(12) << "parallel_s" << std::setw(10) << "speedup"
            << "  match\n";
  bool all_match = true;
  auto row = [&](const std::string& name, const std::function<bool(Execution)>& run) {
    bool ok_p = false;
    const double s = timed([&] { run(Execution::kSerial); });
    const double p = timed([&] { ok_p = run(Execution::kParallel); });
    all_match = all_match && ok_p;
    std::cout << std::left << std::setw(12) << name << std::right << std::fixed
              << std::setprecision(3) << std::setw(12) << s << std::setw(12) << p
              << std::setw(10) << (p > 0 ? s / p : 0.0) << "  " << (ok_p ? "yes" : "NO")
              << '\n';
  };

  EquivalenceReport eq_ref;
  row("equivalence", [&](Execution e) {
    auto r = equivalence_suite(eq, e);
    if (e == Execution::kSerial) eq_ref = r;
    return r.cells == eq_ref.cells;
  });
  ExhaustiveReport ex_ref;
  row("exhaustive", [&](Execution e) {
    auto r = exhaustive_suite(exhaustive_catalog(), e);
    if (e == Execution::kSerial) ex_ref = r;
    return same(r, ex_ref);
  });
  DegreeReport deg_ref;
  row("degree", [&](Execution e) {
    auto r = degree_suite(deg, e);
    if (e == Execution::kSerial) deg_ref = r;
    return r.records == deg_ref.records;
  });
  ScalingReport sc_ref;
  row("scaling", [&](Execution e) {
    auto r = scaling_suite(sc, e);
    if (e == Execution::kSerial) sc_ref = r;
    return same(r, sc_ref);
  });
  return all_match ? 0 : 1;
}

// Copyright 2026 The tagdesc Authors.
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


// Synthetic instances and the solver timing study.

#ifndef TAGDESC_BENCH_H_
#define TAGDESC_BENCH_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tagdesc/core.h"
#include "tagdesc/solve.h"

namespace tagdesc {

struct SyntheticSpec {
  std::size_t n_items = 1000;
  std::size_t n_tags = 50;
  double density = 0.2;  // per (item, tag) inclusion probability
  std::uint64_t seed = 0;

  // Throws a config error unless 0 < density <= 1, n_items >= 1, n_tags >= 2.
  void Validate() const;
};

// Independent inclusion per (item, tag); an empty tag set receives one
// uniformly chosen tag. Tags are named t1..tm, items 0..n-1.
TaggedCluster GenerateSynthetic(const SyntheticSpec& spec);

enum class BenchSolver { kGreedy, kExact, kCnfGreedy };

std::string_view BenchSolverName(BenchSolver s);
BenchSolver ParseBenchSolver(std::string_view name);

struct BenchOptions {
  std::vector<std::size_t> sizes = {200, 2000, 20000};
  std::size_t n_tags = 50;
  double density = 0.2;
  std::uint64_t seed = 0;
  std::size_t repeats = 10;
  // Exact search at tens of thousands of items rarely finishes; the budget
  // bounds each exact run and exhaustion is reported in the row.
  std::uint64_t node_budget = 100'000;
  std::vector<BenchSolver> solvers = {BenchSolver::kGreedy, BenchSolver::kExact,
                                      BenchSolver::kCnfGreedy};
};

struct BenchRow {
  std::size_t n_items = 0;
  BenchSolver solver = BenchSolver::kGreedy;
  double mean_seconds = 0.0;
  double std_seconds = 0.0;  // sample standard deviation, 0 for one repeat
  // exact: share of runs proven optimal. greedy: share of runs with a proven
  // optimum where greedy matched it. Empty when undefined.
  std::optional<double> optimal_fraction;
  std::size_t budget_exhausted = 0;  // exact runs that hit the node budget
  std::size_t runs = 0;
};

// One fresh instance per (size, repeat), shared by every solver. A discarded
// warm-up run of each solver precedes each size. Every produced descriptor is
// checked for validity; a failure is an internal error.
std::vector<BenchRow> TimeSolvers(const BenchOptions& options);

// "n_items,solver,mean_seconds,std_seconds,optimal_fraction".
std::string BenchCsv(std::span<const BenchRow> rows);

}  // namespace tagdesc

#endif  // TAGDESC_BENCH_H_

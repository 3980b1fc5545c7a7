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


#include "tagdesc/bench.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <memory>
#include <unordered_set>

#include "tagdesc/error.h"
#include "tagdesc/random.h"

namespace tagdesc {
namespace {

using Clock = std::chrono::steady_clock;

struct RunOutcome {
  double seconds = 0.0;
  std::size_t size = 0;
  bool optimal = false;
};

void CheckValid(const TaggedCluster& cluster, const DisjunctiveDescriptor& d,
                std::string_view what) {
  if (!IsValidDescriptor(cluster, d)) {
    throw Error(ErrorKind::kInternal,
                "bench: " + std::string(what) + " produced an invalid descriptor");
  }
}

RunOutcome RunOnce(const TaggedCluster& cluster, BenchSolver solver,
                   const SolverConfig& config) {
  RunOutcome out;
  const auto start = Clock::now();
  switch (solver) {
    case BenchSolver::kGreedy: {
      DisjunctiveDescriptor d = GreedyHittingSet(cluster, config);
      out.seconds = std::chrono::duration<double>(Clock::now() - start).count();
      CheckValid(cluster, d, "greedy");
      out.size = d.size();
      break;
    }
    case BenchSolver::kExact: {
      ExactResult r = SolveMinimumHittingSet(cluster, config);
      out.seconds = std::chrono::duration<double>(Clock::now() - start).count();
      CheckValid(cluster, r.descriptor, "exact");
      out.size = r.descriptor.size();
      out.optimal = r.optimal;
      break;
    }
    case BenchSolver::kCnfGreedy: {
      CnfResult r = BuildCnfDescriptor(cluster, config);
      out.seconds = std::chrono::duration<double>(Clock::now() - start).count();
      // Clauses must hit every item that was not dropped.
      std::unordered_set<std::string> removed;
      for (const auto& item : r.removed_items) removed.insert(item.item_id);
      std::vector<std::size_t> kept;
      for (std::size_t i = 0; i < cluster.size(); ++i) {
        if (!removed.contains(cluster.items()[i].id)) kept.push_back(i);
      }
      const TaggedCluster rest = cluster.Subset(kept);
      CheckValid(rest, r.descriptor.clause1, "cnf-greedy");
      CheckValid(rest, r.descriptor.clause2, "cnf-greedy");
      if (!r.descriptor.ClausesDisjoint()) {
        throw Error(ErrorKind::kInternal, "bench: cnf-greedy clauses overlap");
      }
      out.size = r.descriptor.size();
      break;
    }
  }
  return out;
}

std::string FormatSeconds(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9f", v);
  return buf;
}

}  // namespace

void SyntheticSpec::Validate() const {
  if (!(density > 0.0 && density <= 1.0)) {
    throw ConfigError("synthetic: density must lie in (0, 1]");
  }
  if (n_items < 1) throw ConfigError("synthetic: n_items must be at least 1");
  if (n_tags < 2) throw ConfigError("synthetic: n_tags must be at least 2");
}

TaggedCluster GenerateSynthetic(const SyntheticSpec& spec) {
  spec.Validate();
  std::vector<std::string> names;
  names.reserve(spec.n_tags);
  for (std::size_t t = 0; t < spec.n_tags; ++t) names.push_back("t" + std::to_string(t + 1));
  auto universe = std::make_shared<const TagUniverse>(std::move(names));

  Rng rng(spec.seed);
  std::vector<Item> items;
  items.reserve(spec.n_items);
  for (std::size_t i = 0; i < spec.n_items; ++i) {
    TagSet tags = universe->EmptySet();
    for (std::size_t t = 0; t < spec.n_tags; ++t) {
      if (UniformUnit(rng) < spec.density) tags.set(t);
    }
    if (tags.none()) tags.set(UniformIndex(rng, spec.n_tags));
    items.push_back({std::to_string(i), std::move(tags)});
  }
  return TaggedCluster(universe, "synthetic", std::move(items));
}

std::string_view BenchSolverName(BenchSolver s) {
  switch (s) {
    case BenchSolver::kGreedy:
      return "greedy";
    case BenchSolver::kExact:
      return "exact";
    case BenchSolver::kCnfGreedy:
      return "cnf-greedy";
  }
  return "?";
}

BenchSolver ParseBenchSolver(std::string_view name) {
  for (BenchSolver s : {BenchSolver::kGreedy, BenchSolver::kExact, BenchSolver::kCnfGreedy}) {
    if (BenchSolverName(s) == name) return s;
  }
  throw ConfigError("unknown bench solver '" + std::string(name) +
                    "' (expected greedy, exact or cnf-greedy)");
}

std::vector<BenchRow> TimeSolvers(const BenchOptions& options) {
  if (options.repeats < 1) throw ConfigError("bench: repeats must be at least 1");
  if (options.sizes.empty()) throw ConfigError("bench: no sizes given");
  if (options.solvers.empty()) throw ConfigError("bench: no solvers given");
  SolverConfig config;
  config.node_budget = options.node_budget;
  // Random instances occasionally contain single-tag items.
  config.cnf_preprocess = CnfPreprocess::kDropAndReport;
  config.Validate();

  bool has_exact = false;
  for (BenchSolver s : options.solvers) has_exact |= s == BenchSolver::kExact;

  std::vector<BenchRow> rows;
  for (std::size_t n : options.sizes) {
    SyntheticSpec spec{n, options.n_tags, options.density, 0};
    spec.Validate();
    const std::size_t ns = options.solvers.size();
    std::vector<std::vector<RunOutcome>> runs(ns);
    for (std::size_t r = 0; r < options.repeats; ++r) {
      spec.seed = MixSeed(MixSeed(options.seed, n), r);
      const TaggedCluster cluster = GenerateSynthetic(spec);
      if (r == 0) {
        for (BenchSolver s : options.solvers) RunOnce(cluster, s, config);
      }
      for (std::size_t k = 0; k < ns; ++k) {
        runs[k].push_back(RunOnce(cluster, options.solvers[k], config));
      }
    }

    std::size_t exact_index = ns;
    for (std::size_t k = 0; k < ns; ++k) {
      if (options.solvers[k] == BenchSolver::kExact) exact_index = k;
    }
    for (std::size_t k = 0; k < ns; ++k) {
      BenchRow row;
      row.n_items = n;
      row.solver = options.solvers[k];
      row.runs = runs[k].size();
      double sum = 0.0;
      for (const auto& o : runs[k]) sum += o.seconds;
      row.mean_seconds = sum / static_cast<double>(row.runs);
      if (row.runs > 1) {
        double ss = 0.0;
        for (const auto& o : runs[k]) ss += (o.seconds - row.mean_seconds) * (o.seconds - row.mean_seconds);
        row.std_seconds = std::sqrt(ss / static_cast<double>(row.runs - 1));
      }
      if (row.solver == BenchSolver::kExact) {
        std::size_t proven = 0;
        for (const auto& o : runs[k]) proven += o.optimal ? 1 : 0;
        row.budget_exhausted = row.runs - proven;
        row.optimal_fraction = static_cast<double>(proven) / static_cast<double>(row.runs);
      } else if (row.solver == BenchSolver::kGreedy && has_exact) {
        std::size_t known = 0, matched = 0;
        for (std::size_t r = 0; r < row.runs; ++r) {
          const RunOutcome& e = runs[exact_index][r];
          if (!e.optimal) continue;
          ++known;
          matched += runs[k][r].size == e.size ? 1 : 0;
        }
        if (known > 0) {
          row.optimal_fraction = static_cast<double>(matched) / static_cast<double>(known);
        }
      }
      rows.push_back(row);
    }
  }
  return rows;
}

std::string BenchCsv(std::span<const BenchRow> rows) {
  std::string out = "n_items,solver,mean_seconds,std_seconds,optimal_fraction\n";
  for (const auto& row : rows) {
    out += std::to_string(row.n_items);
    out += ',';
    out += BenchSolverName(row.solver);
    out += ',' + FormatSeconds(row.mean_seconds) + ',' + FormatSeconds(row.std_seconds) + ',';
    if (row.optimal_fraction) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.3f", *row.optimal_fraction);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

}  // namespace tagdesc

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


// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "tagdesc/bench.h"
#include "tagdesc/cluster_io.h"
#include "tagdesc/core.h"
#include "tagdesc/csv.h"
#include "tagdesc/filter.h"
#include "tagdesc/pipeline.h"
#include "tagdesc/random.h"
#include "tagdesc/report.h"
#include "tagdesc/solve.h"
#include "tagdesc/tagging.h"

namespace tagdesc {
namespace {

using Clock = std::chrono::steady_clock;

std::string Fixture(const std::string& rel) { return std::string(TAGDESC_FIXTURE_DIR) + "/" + rel; }

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Each check returns an empty string on success, otherwise the reason.
using Check = std::function<std::string()>;

std::string Names(const TagUniverse& u, const std::vector<TagId>& tags) {
  std::string s = "[";
  for (std::size_t i = 0; i < tags.size(); ++i) s += (i ? ", " : "") + u.name(tags[i]);
  return s + "]";
}

TaggedCluster RandomCluster(Rng& rng, std::size_t m, std::size_t n, double density,
                            std::size_t seq) {
  auto universe = std::make_shared<const TagUniverse>([&] {
    std::vector<std::string> names;
    for (std::size_t t = 0; t < m; ++t) names.push_back("t" + std::to_string(t + 1));
    return names;
  }());
  std::vector<Item> items;
  for (std::size_t i = 0; i < n; ++i) {
    TagSet s = universe->EmptySet();
    for (std::size_t t = 0; t < m; ++t) {
      if (UniformUnit(rng) < density) s.set(t);
    }
    if (s.none()) s.set(UniformIndex(rng, m));
    items.push_back({std::to_string(i), std::move(s)});
  }
  return TaggedCluster(universe, "r" + std::to_string(seq), std::move(items));
}

std::string GreedyGoldenTrace() {
  const ClusterSet set = LoadClusterSet(Fixture("examples/greedy_trace.json"));
  const TaggedCluster& c = set.clusters.at(0);
  GreedyHittingSet(c);  // warm-up
  const auto start = Clock::now();
  const DisjunctiveDescriptor d = GreedyHittingSet(c);
  const double secs = SecondsSince(start);
  if (d.tags != std::vector<TagId>{1, 0, 3}) {
    return "selection order " + Names(c.universe(), d.tags) + ", want [t2, t1, t4]";
  }
  if (d.Sorted() != std::vector<TagId>{0, 1, 3}) return "final set differs";
  if (secs >= 1e-3) return "took " + std::to_string(secs) + " s";
  return "";
}

std::string ExactGap() {
  const ClusterSet set = LoadClusterSet(Fixture("examples/greedy_trace.json"));
  const TaggedCluster& c = set.clusters.at(0);
  const ExactResult e = SolveMinimumHittingSet(c);
  const DisjunctiveDescriptor g = GreedyHittingSet(c);
  if (!e.optimal) return "exact search did not finish";
  if (!IsValidDescriptor(c, e.descriptor)) return "exact descriptor is not valid";
  if (e.descriptor.size() != 2) return "exact size " + std::to_string(e.descriptor.size());
  if (g.size() != 3) return "greedy size " + std::to_string(g.size());
  return "";
}

std::string OracleEquivalence() {
  const auto start = Clock::now();
  Rng rng(20260101);
  std::size_t instances = 0;
  for (double density : {0.1, 0.3, 0.6}) {
    for (int i = 0; i < 80; ++i) {
      const std::size_t m = 2 + UniformIndex(rng, 14);  // 2..15
      const std::size_t n = 1 + UniformIndex(rng, 25);  // 1..25
      const TaggedCluster c = RandomCluster(rng, m, n, density, instances);
      const ExactResult e = SolveMinimumHittingSet(c);
      const DisjunctiveDescriptor b = BruteForceMinimumHittingSet(c);
      const DisjunctiveDescriptor g = GreedyHittingSet(c);
      if (!e.optimal || !IsValidDescriptor(c, e.descriptor)) return "exact failed on " + c.id();
      if (e.descriptor.size() != b.size()) {
        return c.id() + ": exact " + std::to_string(e.descriptor.size()) + " vs oracle " +
               std::to_string(b.size());
      }
      if (!IsValidDescriptor(c, g) || g.size() < e.descriptor.size()) {
        return c.id() + ": greedy invalid or smaller than exact";
      }
      ++instances;
    }
  }
  const double secs = SecondsSince(start);
  if (instances < 200) return "only " + std::to_string(instances) + " instances";
  if (secs >= 30.0) return "took " + std::to_string(secs) + " s";
  return "";
}

std::string CnfGolden() {
  const ClusterSet set = LoadClusterSet(Fixture("examples/three_items.json"));
  const TaggedCluster& c = set.clusters.at(0);
  SolverConfig config;
  config.clause_solvers = {ClauseSolver::kExact, ClauseSolver::kExact};
  const CnfResult r = BuildCnfDescriptor(c, config);
  if (!r.removed_items.empty()) return "items were removed";
  if (!r.descriptor.ClausesDisjoint()) return "clauses overlap";
  if (!IsValidDescriptor(c, r.descriptor.clause1) || !IsValidDescriptor(c, r.descriptor.clause2)) {
    return "a clause does not hit every item";
  }
  if (r.descriptor.size() != 4) return "total size " + std::to_string(r.descriptor.size());
  return "";
}

std::string CnfInfeasibility() {
  const ClusterSet set = LoadClusterSet(Fixture("examples/singleton.json"));
  const TaggedCluster& c = set.clusters.at(0);
  try {
    BuildCnfDescriptor(c);
    return "strict mode did not fail";
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kCnfInfeasible) return std::string("wrong error: ") + e.what();
  }
  SolverConfig config;
  config.cnf_preprocess = CnfPreprocess::kDropAndReport;
  const CnfResult r = BuildCnfDescriptor(c, config);
  if (r.removed_items.size() != 1) return std::to_string(r.removed_items.size()) + " items removed";
  if (r.removed_items[0].item_id != c.items()[0].id ||
      r.removed_items[0].reason != RemovalReason::kSingletonTagSet ||
      RemovalReasonName(r.removed_items[0].reason) != "singleton-tag-set") {
    return "wrong removal record";
  }
  return "";
}

std::string FilterSoundness() {
  Rng rng(77);
  int solved = 0;
  for (int inst = 0; inst < 100; ++inst) {
    const std::size_t pairs = 2 + UniformIndex(rng, 5);
    const std::size_t m = 2 * pairs + UniformIndex(rng, 4);
    const TaggedCluster a = RandomCluster(rng, m, 5 + UniformIndex(rng, 30), 0.4, inst);
    std::vector<Item> b_items = RandomCluster(rng, m, 5 + UniformIndex(rng, 30), 0.4, inst).items();
    const TaggedCluster b(a.universe_ptr(), "b", std::move(b_items));
    std::vector<std::pair<TagId, TagId>> p;
    for (TagId k = 0; k < pairs; ++k) p.push_back({2 * k, 2 * k + 1});
    const ComplementMap cmap(p, m);

    SolverConfig config;
    config.candidate_mask = NonComplementarityFilter(a, cmap);
    for (const auto& [x, y] : cmap.pairs()) {
      if (config.candidate_mask->admissible(x) && config.candidate_mask->admissible(y)) {
        return "instance " + std::to_string(inst) + " left a pair admissible";
      }
    }
    bool feasible = true;
    for (const auto& item : a.items()) {
      TagSet row = item.tags;
      row &= config.candidate_mask->bits();
      feasible = feasible && !row.none();
    }
    // With every tag of some item filtered out there is no descriptor to check.
    std::vector<DisjunctiveDescriptor> solved_descriptors;
    if (feasible) {
      ++solved;
      solved_descriptors = {GreedyHittingSet(a, config),
                            SolveMinimumHittingSet(a, config).descriptor};
    }
    for (const auto& d : solved_descriptors) {
      for (const auto& [x, y] : cmap.pairs()) {
        const bool hx = std::find(d.tags.begin(), d.tags.end(), x) != d.tags.end();
        const bool hy = std::find(d.tags.begin(), d.tags.end(), y) != d.tags.end();
        if (hx && hy) return "instance " + std::to_string(inst) + " kept a complementary pair";
      }
    }

    const auto [a100, b100] = CrossClusterFilter(a, b, 100.0);
    if (a100 != CandidateMask::All(m) || b100 != CandidateMask::All(m)) {
      return "threshold 100 changed a mask";
    }
    const auto [a0, b0] = CrossClusterFilter(a, b, 0.0);
    const auto fa = TagFrequencies(a), fb = TagFrequencies(b);
    for (TagId t = 0; t < m; ++t) {
      const bool shared = fa[t] > 0 && fb[t] > 0;
      if (a0.admissible(t) == shared || b0.admissible(t) == shared) {
        return "threshold 0 mishandled tag " + std::to_string(t);
      }
    }
  }
  if (solved < 50) return "only " + std::to_string(solved) + " instances were solvable";
  return "";
}

std::string DivorceReproduction() {
  const DataTable data = ReadCsvFile(Fixture("divorce/ratings.csv"));
  const DataTable labels_table = ReadCsvFile(Fixture("divorce/labels.csv"));
  const std::vector<std::string> labels = labels_table.Column("cluster");
  const auto rules = ResolveTagSchema(LoadTagSchema(Fixture("divorce/schema.json")), data);
  const ClusterSet set = ApplyTags(data, labels, rules, "couple");
  const TaggedCluster& c1 = set.Find("1");
  const TagStats stats = TagCoveragePercentages(c1);
  auto full = [&](const DisjunctiveDescriptor& d) {
    return d.size() == 1 && stats.per_tag[d.tags[0]].count == c1.size();
  };
  const DisjunctiveDescriptor g = GreedyHittingSet(c1);
  if (!full(g)) return "greedy gave " + Names(c1.universe(), g.tags);
  const ExactResult e = SolveMinimumHittingSet(c1);
  if (!e.optimal || !full(e.descriptor)) return "exact gave " + Names(c1.universe(), e.descriptor.tags);
  auto pct = [&](const char* name) {
    return static_cast<double>(stats.per_tag[set.universe->Lookup(name)].rounded_thousandths()) /
           1000.0;
  };
  if (std::abs(pct("t5") - 100.0) > 1e-3) return "t5 at " + std::to_string(pct("t5"));
  if (std::abs(pct("t43") - 67.778) > 1e-3) return "t43 at " + std::to_string(pct("t43"));
  return "";
}

std::string ScalabilityShape() {
  BenchOptions o;
  o.sizes = {200, 2000, 20000};
  o.n_tags = 50;
  o.density = 0.2;
  o.repeats = 10;
  o.seed = 2026;
  // Exact search at these sizes runs to its budget; the shape criterion only
  // concerns the two greedy variants.
  o.node_budget = 2000;
  const auto rows = TimeSolvers(o);
  double greedy = -1, cnf = -1;
  for (const auto& r : rows) {
    if (r.n_items != 20000) continue;
    if (r.solver == BenchSolver::kGreedy) greedy = r.mean_seconds;
    if (r.solver == BenchSolver::kCnfGreedy) cnf = r.mean_seconds;
  }
  if (greedy <= 0 || cnf < 0) return "missing rows for n=20000";
  const double ratio = cnf / greedy;
  std::cout << "  n=20000 greedy " << greedy << " s, cnf-greedy " << cnf << " s, ratio " << ratio
            << "\n";
  if (ratio < 1.5 || ratio > 3.0) return "ratio " + std::to_string(ratio) + " outside [1.5, 3.0]";
  return "";
}

// Every seeded operation, serialized as JSON.
std::string SeededOutputs() {
  std::string out;
  ClusterSet set;
  for (int k = 0; k < 3; ++k) {
    TaggedCluster g = GenerateSynthetic({120, 24, 0.15, static_cast<std::uint64_t>(k + 11)});
    if (!set.universe) set.universe = g.universe_ptr();
    std::vector<Item> items = g.items();
    set.clusters.emplace_back(set.universe, std::to_string(k + 1), std::move(items));
  }
  out += ClusterSetToJson(set);

  const DataTable data = ReadCsvFile(Fixture("divorce/ratings.csv"));
  IngestOptions ingest;
  ingest.exclude = {"couple"};
  const NumericMatrix m = Standardize(ToNumericMatrix(data, ingest));
  const KMeansResult km = KMeansBestOf(m, 2, 99, 300, 5);
  std::ostringstream labels;
  for (std::size_t l : km.labels) labels << l << ",";
  out += labels.str() + ElbowCsv(ElbowCurve(m, 1, 6, 99, 300, 3));

  ExplainOptions ex;
  ex.solver.cnf_preprocess = CnfPreprocess::kDropAndReport;
  ex.filters.cross_pairs = {{"1", "2"}};
  ex.threads = 2;
  out += RenderReport(RunExplain(set, ex), ReportFormat::kJson);

  BenchOptions b;
  b.sizes = {100};
  b.n_tags = 16;
  b.repeats = 3;
  b.seed = 5;
  for (const auto& r : TimeSolvers(b)) {
    out += std::string(BenchSolverName(r.solver)) + ":" + std::to_string(r.n_items) + ":" +
           (r.optimal_fraction ? std::to_string(*r.optimal_fraction) : "-") + ";";
  }
  return out;
}

std::string Determinism() {
  const std::string first = SeededOutputs();
  const std::string second = SeededOutputs();
  if (first != second) return "outputs differ between runs";
  return "";
}

}  // namespace
}  // namespace tagdesc

int main() {
  using tagdesc::Check;
  const std::vector<std::pair<std::string, Check>> criteria = {
      {"1 greedy golden trace", tagdesc::GreedyGoldenTrace},
      {"2 exact-vs-greedy gap", tagdesc::ExactGap},
      {"3 oracle equivalence", tagdesc::OracleEquivalence},
      {"4 cnf golden", tagdesc::CnfGolden},
      {"5 cnf infeasibility", tagdesc::CnfInfeasibility},
      {"6 filter soundness", tagdesc::FilterSoundness},
      {"7 divorce fixture reproduction", tagdesc::DivorceReproduction},
      {"8 scalability shape", tagdesc::ScalabilityShape},
      {"9 determinism", tagdesc::Determinism},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    std::string reason;
    try {
      reason = check();
    } catch (const std::exception& e) {
      reason = std::string("exception: ") + e.what();
    }
    if (reason.empty()) {
      std::cout << "PASS " << name << "\n";
    } else {
      std::cout << "FAIL " << name << ": " << reason << "\n";
      ++failures;
    }
    std::cout.flush();
  }
  return failures == 0 ? 0 : 1;
}

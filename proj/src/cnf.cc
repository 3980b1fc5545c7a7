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

// Two-clause CNF descriptor: solve D1, strip D1's tags from every tag set,
// solve D2 on what is left. Items that make this impossible (a single
// admissible tag, or nothing left after stripping D1) either fail the call or
// are dropped and reported, depending on the preprocessing mode.

#include <string>

#include "solve_internal.h"
#include "tagdesc/solve.h"

namespace tagdesc {
namespace {

struct ClauseOutcome {
  DisjunctiveDescriptor descriptor;
  bool optimal;
};

ClauseOutcome SolveClause(std::vector<TagSet> rows, const CandidateMask& mask,
                          const SolverConfig& config, ClauseSolver solver) {
  if (solver == ClauseSolver::kGreedy) {
    return {internal::GreedyOnRows(rows, mask), false};
  }
  ExactResult exact = internal::ExactOnRows(std::move(rows), mask, config.node_budget);
  return {std::move(exact.descriptor), exact.optimal};
}

[[noreturn]] void ThrowCnfInfeasible(const TaggedCluster& cluster,
                                     const std::string& what,
                                     const std::vector<std::string>& items) {
  std::string names;
  for (const auto& id : items) names += (names.empty() ? "" : ", ") + id;
  throw Error(ErrorKind::kInfeasible, ErrorCode::kCnfInfeasible,
              "cluster " + cluster.id() + ": no two-clause CNF descriptor: " +
                  what + (names.empty() ? "" : ": " + names));
}

}  // namespace

CnfResult BuildCnfDescriptor(const TaggedCluster& cluster,
                             const SolverConfig& config) {
  config.Validate();
  if (cluster.empty()) {
    throw Error(ErrorKind::kInvalidData, ErrorCode::kEmptyCluster,
                "cluster " + cluster.id() + " has no items");
  }
  const CandidateMask mask = internal::ResolveMask(cluster, config.candidate_mask);
  std::vector<TagSet> rows = internal::AdmissibleRows(cluster, mask);
  const bool strict = config.cnf_preprocess == CnfPreprocess::kStrict;
  CnfResult result;

  // Items with one admissible tag would need it in both clauses.
  std::vector<TagSet> kept_rows;
  std::vector<const std::string*> kept_ids;
  std::vector<std::string> singletons;
  kept_rows.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].count() == 1) {
      singletons.push_back(cluster.items()[i].id);
    } else {
      kept_rows.push_back(std::move(rows[i]));
      kept_ids.push_back(&cluster.items()[i].id);
    }
  }
  if (!singletons.empty()) {
    if (strict) ThrowCnfInfeasible(cluster, "items with a single tag", singletons);
    for (const auto& id : singletons) {
      result.removed_items.push_back({id, RemovalReason::kSingletonTagSet});
    }
  }
  if (kept_rows.empty()) ThrowCnfInfeasible(cluster, "every item was removed", {});

  const ClauseSolver first_solver = config.clause_solvers[0];
  ClauseOutcome d1 =
      first_solver == ClauseSolver::kGreedy
          ? ClauseOutcome{internal::GreedyOnRows(kept_rows, mask), false}
          : SolveClause(kept_rows, mask, config, first_solver);
  const TagSet d1_set = d1.descriptor.ToSet(cluster.universe().size());

  // Residual tag sets T_i - D1, restricted to admissible tags.
  std::vector<TagSet> residual;
  std::vector<std::string> emptied;
  residual.reserve(kept_rows.size());
  for (std::size_t k = 0; k < kept_rows.size(); ++k) {
    TagSet& rest = kept_rows[k];
    rest.Subtract(d1_set);
    if (rest.none()) {
      emptied.push_back(*kept_ids[k]);
    } else {
      residual.push_back(std::move(rest));
    }
  }
  if (!emptied.empty()) {
    if (strict) {
      ThrowCnfInfeasible(cluster, "items left without tags after removing D1", emptied);
    }
    for (const auto& id : emptied) {
      result.removed_items.push_back({id, RemovalReason::kEmptiedAfterFirstClause});
    }
  }
  if (residual.empty()) ThrowCnfInfeasible(cluster, "every item was removed", {});

  CandidateMask second_mask = mask;
  for (TagId t : d1.descriptor.tags) second_mask.Exclude(t);
  ClauseOutcome d2 = SolveClause(std::move(residual), second_mask, config,
                                 config.clause_solvers[1]);

  result.descriptor.clause1 = std::move(d1.descriptor);
  result.descriptor.clause2 = std::move(d2.descriptor);
  result.clause_optimal = {d1.optimal, d2.optimal};
  return result;
}

}  // namespace tagdesc

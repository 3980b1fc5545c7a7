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

// Descriptor solvers.
//
// A disjunctive descriptor of a cluster is exactly a hitting set of the
// items' tag sets. Three solvers are provided:
//
//   * GreedyHittingSet: repeatedly takes the tag hitting the most items not
//     yet hit; ties go to the lowest tag id.
//   * SolveMinimumHittingSet: depth-first branch-and-bound returning a hitting
//     set of minimum cardinality (the optimum of the 0/1 covering program
//     min sum x_t s.t. sum_{t in T_i} x_t >= 1 for every item i).
//   * BruteForceMinimumHittingSet: subset enumeration, used as a test oracle.
//
// BuildCnfDescriptor chains two disjunctive solves into a pair of disjoint
// clauses.

#ifndef TAGDESC_SOLVE_H_
#define TAGDESC_SOLVE_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tagdesc/core.h"

namespace tagdesc {

enum class ClauseSolver { kGreedy, kExact };
enum class CnfPreprocess { kStrict, kDropAndReport };

std::string_view ClauseSolverName(ClauseSolver s);
ClauseSolver ParseClauseSolver(std::string_view name);
std::string_view CnfPreprocessName(CnfPreprocess p);
CnfPreprocess ParseCnfPreprocess(std::string_view name);

struct SolverConfig {
  static constexpr std::uint64_t kDefaultNodeBudget = 10'000'000;

  std::optional<CandidateMask> candidate_mask;
  std::uint64_t node_budget = kDefaultNodeBudget;
  // Solver used for the first and second CNF clause respectively.
  std::array<ClauseSolver, 2> clause_solvers = {ClauseSolver::kGreedy,
                                                ClauseSolver::kGreedy};
  CnfPreprocess cnf_preprocess = CnfPreprocess::kStrict;

  // Throws a config error when node_budget == 0.
  void Validate() const;
};

// One greedy iteration: frequencies over the items not yet hit, taken just
// before `chosen` was selected. Chosen and inadmissible tags read 0.
struct GreedyStep {
  TagId chosen;
  std::size_t uncovered_before;
  std::vector<std::size_t> frequencies;
};

// Tags in selection order. Every returned tag hit at least one item that
// earlier tags did not.
DisjunctiveDescriptor GreedyHittingSet(const TaggedCluster& cluster,
                                       const SolverConfig& config = {},
                                       std::vector<GreedyStep>* trace = nullptr);

struct ExactResult {
  DisjunctiveDescriptor descriptor;  // ascending tag ids
  bool optimal = false;              // false when the node budget ran out
  std::uint64_t nodes = 0;
};

// Never throws on budget exhaustion; reports the incumbent with
// optimal == false instead.
ExactResult SolveMinimumHittingSet(const TaggedCluster& cluster,
                                   const SolverConfig& config = {});

class BudgetExceededError : public Error {
 public:
  BudgetExceededError(DisjunctiveDescriptor incumbent, std::uint64_t nodes);
  const DisjunctiveDescriptor& incumbent() const { return incumbent_; }
  bool optimal() const { return false; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  DisjunctiveDescriptor incumbent_;
  std::uint64_t nodes_;
};

// Throws BudgetExceededError when the search is cut short.
DisjunctiveDescriptor ExactMinimumHittingSet(const TaggedCluster& cluster,
                                             const SolverConfig& config = {});

inline constexpr std::size_t kOracleMaxTags = 20;

// Enumerates admissible-tag subsets by increasing size, then
// lexicographically by tag id, and returns the first hitting set.
DisjunctiveDescriptor BruteForceMinimumHittingSet(
    const TaggedCluster& cluster, const std::optional<CandidateMask>& mask = std::nullopt);

enum class RemovalReason { kSingletonTagSet, kEmptiedAfterFirstClause };

std::string_view RemovalReasonName(RemovalReason r);
RemovalReason ParseRemovalReason(std::string_view name);

struct RemovedItem {
  std::string item_id;
  RemovalReason reason;

  friend bool operator==(const RemovedItem&, const RemovedItem&) = default;
};

struct CnfResult {
  CnfDescriptor descriptor;
  std::vector<RemovedItem> removed_items;
  // Per clause: solved exactly and proven minimum on its residual instance.
  std::array<bool, 2> clause_optimal = {false, false};
};

CnfResult BuildCnfDescriptor(const TaggedCluster& cluster,
                             const SolverConfig& config = {});

}  // namespace tagdesc

#endif  // TAGDESC_SOLVE_H_

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

#include <string>

#include "solve_internal.h"
#include "tagdesc/solve.h"

namespace tagdesc {

std::string_view ClauseSolverName(ClauseSolver s) {
  return s == ClauseSolver::kGreedy ? "greedy" : "exact";
}

ClauseSolver ParseClauseSolver(std::string_view name) {
  if (name == "greedy") return ClauseSolver::kGreedy;
  if (name == "exact") return ClauseSolver::kExact;
  throw ConfigError("unknown clause solver '" + std::string(name) +
                    "' (expected greedy or exact)");
}

std::string_view CnfPreprocessName(CnfPreprocess p) {
  return p == CnfPreprocess::kStrict ? "strict" : "drop-and-report";
}

CnfPreprocess ParseCnfPreprocess(std::string_view name) {
  if (name == "strict") return CnfPreprocess::kStrict;
  if (name == "drop-and-report") return CnfPreprocess::kDropAndReport;
  throw ConfigError("unknown CNF preprocessing mode '" + std::string(name) +
                    "' (expected strict or drop-and-report)");
}

std::string_view RemovalReasonName(RemovalReason r) {
  return r == RemovalReason::kSingletonTagSet ? "singleton-tag-set"
                                              : "emptied-after-D1";
}

RemovalReason ParseRemovalReason(std::string_view name) {
  if (name == "singleton-tag-set") return RemovalReason::kSingletonTagSet;
  if (name == "emptied-after-D1") return RemovalReason::kEmptiedAfterFirstClause;
  throw DataError("unknown removal reason '" + std::string(name) + "'");
}

void SolverConfig::Validate() const {
  if (node_budget < 1) throw ConfigError("node budget must be at least 1");
}

BudgetExceededError::BudgetExceededError(DisjunctiveDescriptor incumbent,
                                         std::uint64_t nodes)
    : Error(ErrorKind::kBudget, ErrorCode::kBudgetExceeded,
            "exact search exhausted its budget of " + std::to_string(nodes) +
                " nodes; best incumbent has " +
                std::to_string(incumbent.size()) + " tags (optimal=false)"),
      incumbent_(std::move(incumbent)),
      nodes_(nodes) {}

namespace internal {

CandidateMask ResolveMask(const TaggedCluster& cluster,
                          const std::optional<CandidateMask>& mask) {
  const std::size_t m = cluster.universe().size();
  if (!mask.has_value()) return CandidateMask::All(m);
  if (mask->size() != m) {
    throw ConfigError("candidate mask has " + std::to_string(mask->size()) +
                      " entries but the universe has " + std::to_string(m));
  }
  return *mask;
}

std::vector<TagSet> AdmissibleRows(const TaggedCluster& cluster,
                                   const CandidateMask& mask) {
  if (auto untagged = cluster.UntaggedItems(); !untagged.empty()) {
    std::string names;
    for (const auto& u : untagged) names += (names.empty() ? "" : ", ") + u;
    throw DataError("cluster " + cluster.id() +
                        ": no descriptor can hit items with empty tag sets: " +
                        names,
                    ErrorCode::kUntaggedItem);
  }
  std::vector<TagSet> rows;
  rows.reserve(cluster.size());
  for (const Item& item : cluster.items()) {
    TagSet row = item.tags;
    row &= mask.bits();
    if (row.none()) {
      throw Error(ErrorKind::kInfeasible, ErrorCode::kInfeasibleUnderMask,
                  "cluster " + cluster.id() + ": item '" + item.id +
                      "' has no admissible tag under the candidate mask");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace internal
}  // namespace tagdesc

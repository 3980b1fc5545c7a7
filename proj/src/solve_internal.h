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

#ifndef TAGDESC_SRC_SOLVE_INTERNAL_H_
#define TAGDESC_SRC_SOLVE_INTERNAL_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "tagdesc/core.h"
#include "tagdesc/solve.h"

namespace tagdesc::internal {

// Mask with every tag admissible when none is given; validates the width.
CandidateMask ResolveMask(const TaggedCluster& cluster,
                          const std::optional<CandidateMask>& mask);

// Fails fast on items with empty tag sets, then on items none of whose tags
// are admissible. Returns each item's tag set restricted to the mask.
std::vector<TagSet> AdmissibleRows(const TaggedCluster& cluster,
                                   const CandidateMask& mask);

// Solvers over rows already restricted to `mask` and known to be non-empty.
DisjunctiveDescriptor GreedyOnRows(const std::vector<TagSet>& rows,
                                   const CandidateMask& mask,
                                   std::vector<GreedyStep>* trace = nullptr);
ExactResult ExactOnRows(std::vector<TagSet> rows, const CandidateMask& mask,
                        std::uint64_t node_budget);

}  // namespace tagdesc::internal

#endif  // TAGDESC_SRC_SOLVE_INTERNAL_H_

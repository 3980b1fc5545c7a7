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

#include <cstdint>

#include "solve_internal.h"
#include "tagdesc/solve.h"

namespace tagdesc {

DisjunctiveDescriptor BruteForceMinimumHittingSet(
    const TaggedCluster& cluster, const std::optional<CandidateMask>& mask_in) {
  const CandidateMask mask = internal::ResolveMask(cluster, mask_in);
  std::vector<TagId> admissible;
  mask.bits().ForEach([&](std::size_t t) { admissible.push_back(static_cast<TagId>(t)); });
  if (admissible.size() > kOracleMaxTags) {
    throw Error(ErrorKind::kConfig, ErrorCode::kOracleCap,
                "brute-force oracle is capped at " + std::to_string(kOracleMaxTags) +
                    " admissible tags, got " + std::to_string(admissible.size()));
  }
  const std::vector<TagSet> rows = internal::AdmissibleRows(cluster, mask);

  // Re-index each row over admissible positions: bit p <=> admissible[p].
  std::vector<std::uint32_t> packed;
  packed.reserve(rows.size());
  for (const TagSet& row : rows) {
    std::uint32_t bits = 0;
    for (std::size_t p = 0; p < admissible.size(); ++p) {
      if (row.test(admissible[p])) bits |= std::uint32_t{1} << p;
    }
    packed.push_back(bits);
  }
  auto hits_all = [&](std::uint32_t subset) {
    for (std::uint32_t row : packed) {
      if ((row & subset) == 0) return false;
    }
    return true;
  };

  const std::size_t k = admissible.size();
  for (std::size_t r = 0; r <= k; ++r) {
    // Combinations of r positions in lexicographic order.
    std::vector<std::size_t> pos(r);
    for (std::size_t i = 0; i < r; ++i) pos[i] = i;
    while (true) {
      std::uint32_t subset = 0;
      for (std::size_t p : pos) subset |= std::uint32_t{1} << p;
      if (hits_all(subset)) {
        DisjunctiveDescriptor d;
        for (std::size_t p : pos) d.tags.push_back(admissible[p]);
        return d;
      }
      // Advance to the next combination.
      std::size_t i = r;
      while (i > 0 && pos[i - 1] == k - r + (i - 1)) --i;
      if (i == 0) break;
      ++pos[i - 1];
      for (std::size_t j = i; j < r; ++j) pos[j] = pos[j - 1] + 1;
    }
  }
  // Unreachable: every row has an admissible tag, so the full set hits all.
  throw Error(ErrorKind::kInfeasible, ErrorCode::kInfeasibleUnderMask,
              "cluster " + cluster.id() + ": no hitting set exists");
}

}  // namespace tagdesc

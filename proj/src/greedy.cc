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

#include <algorithm>

#include "solve_internal.h"
#include "tagdesc/solve.h"

namespace tagdesc {

namespace internal {

DisjunctiveDescriptor GreedyOnRows(const std::vector<TagSet>& rows,
                                   const CandidateMask& mask,
                                   std::vector<GreedyStep>* trace) {
  const std::size_t n = rows.size();
  const std::size_t m = mask.size();

  // Column layout: one item bitset per admissible tag, so each frequency is a
  // single AND+popcount over n/64 words.
  std::vector<TagId> candidates;
  mask.bits().ForEach([&](std::size_t t) { candidates.push_back(static_cast<TagId>(t)); });
  std::vector<BitVector> columns(m);
  for (TagId t : candidates) columns[t] = BitVector(n);
  for (std::size_t i = 0; i < n; ++i) {
    rows[i].ForEach([&](std::size_t t) { columns[t].set(i); });
  }

  BitVector uncovered(n);
  uncovered.SetAll();
  std::size_t remaining = n;
  std::vector<bool> chosen(m, false);
  DisjunctiveDescriptor result;
  std::vector<std::size_t> freq(m, 0);

  while (remaining > 0) {
    std::fill(freq.begin(), freq.end(), 0);
    TagId best = 0;
    std::size_t best_freq = 0;
    for (TagId t : candidates) {
      if (chosen[t]) continue;
      freq[t] = columns[t].IntersectionCount(uncovered);
      if (freq[t] > best_freq) {  // strict: lowest id wins ties
        best = t;
        best_freq = freq[t];
      }
    }
    // Every row has an admissible tag, so some candidate hits something.
    if (best_freq == 0) {
      throw Error(ErrorKind::kInternal, "greedy: no progress");
    }
    if (trace != nullptr) trace->push_back(GreedyStep{best, remaining, freq});
    chosen[best] = true;
    result.tags.push_back(best);
    uncovered.Subtract(columns[best]);
    remaining -= best_freq;
  }
  return result;
}

}  // namespace internal

DisjunctiveDescriptor GreedyHittingSet(const TaggedCluster& cluster,
                                       const SolverConfig& config,
                                       std::vector<GreedyStep>* trace) {
  config.Validate();
  const CandidateMask mask = internal::ResolveMask(cluster, config.candidate_mask);
  return internal::GreedyOnRows(internal::AdmissibleRows(cluster, mask), mask, trace);
}

}  // namespace tagdesc

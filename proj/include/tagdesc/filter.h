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

// Admissibility filters. Each returns a CandidateMask; masks compose with
// operator& before being handed to a solver.

#ifndef TAGDESC_FILTER_H_
#define TAGDESC_FILTER_H_

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tagdesc/core.h"

namespace tagdesc {

// Declared complementary tag pairs. No tag may appear in two pairs.
class ComplementMap {
 public:
  ComplementMap() = default;
  // Throws a config error for a == b, out-of-range ids or reused tags.
  ComplementMap(std::vector<std::pair<TagId, TagId>> pairs, std::size_t universe_size);

  const std::vector<std::pair<TagId, TagId>>& pairs() const { return pairs_; }
  bool empty() const { return pairs_.empty(); }

 private:
  std::vector<std::pair<TagId, TagId>> pairs_;
};

// File form: [["t1", "t2"], ["t3", "t4"], ...].
ComplementMap ParseComplementMap(std::string_view json_text, const TagUniverse& universe);
ComplementMap LoadComplementMap(const std::string& path, const TagUniverse& universe);
std::string ComplementMapToJson(const ComplementMap& map, const TagUniverse& universe);

// For each pair, the member covering fewer items of `cluster` is made
// inadmissible; on a tie the higher tag id is. Unpaired tags stay admissible.
CandidateMask NonComplementarityFilter(const TaggedCluster& cluster,
                                       const ComplementMap& complements);

// Tag t is inadmissible in both masks iff its coverage exceeds
// `threshold_percent` in both clusters (strictly).
std::pair<CandidateMask, CandidateMask> CrossClusterFilter(
    const TaggedCluster& cluster_a, const TaggedCluster& cluster_b,
    double threshold_percent);

}  // namespace tagdesc

#endif  // TAGDESC_FILTER_H_

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

// Tagged-cluster interchange.
//
// JSON form:
//   {"universe": ["t1", "t2", ...],
//    "clusters": [{"cluster_id": "1",
//                  "items": [{"id": "a", "tags": [0, 4]}, ...]}, ...]}
//
// CSV form (binary matrix): one `cluster_id` column, one `item_id` column,
// every other column is a tag whose cells are 0 or 1.

#ifndef TAGDESC_CLUSTER_IO_H_
#define TAGDESC_CLUSTER_IO_H_

#include <string>
#include <string_view>

#include "tagdesc/core.h"
#include "tagdesc/csv.h"

namespace tagdesc {

struct LoadOptions {
  bool allow_untagged = false;
};

ClusterSet ParseClusterSetJson(std::string_view text, const LoadOptions& options = {});
ClusterSet ParseBinaryMatrix(const DataTable& table, const LoadOptions& options = {});

// Dispatches on extension: ".csv" reads the binary matrix, anything else JSON.
ClusterSet LoadClusterSet(const std::string& path, const LoadOptions& options = {});

// Pretty-printed JSON; tag ids ascending within each item.
std::string ClusterSetToJson(const ClusterSet& set);

// Binary matrix CSV: cluster_id,item_id,<tag names...>.
std::string ClusterSetToBinaryMatrix(const ClusterSet& set);

// Ordering for cluster ids: numeric ids compare numerically and sort before
// non-numeric ones, which compare lexicographically.
bool ClusterIdLess(std::string_view a, std::string_view b);

}  // namespace tagdesc

#endif  // TAGDESC_CLUSTER_IO_H_

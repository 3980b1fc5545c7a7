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


// The explain stage end to end: filters, solvers per cluster, coverage
// statistics, and rendering of the resulting report.

#ifndef TAGDESC_REPORT_H_
#define TAGDESC_REPORT_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tagdesc/core.h"
#include "tagdesc/filter.h"
#include "tagdesc/solve.h"

namespace tagdesc {

enum class Method { kGreedy, kExact, kCnf };

std::string_view MethodName(Method m);
Method ParseMethod(std::string_view name);

struct FilterSettings {
  std::optional<ComplementMap> complements;
  // Cluster id pairs filtered against each other. A cluster may appear in
  // at most one pair.
  std::vector<std::pair<std::string, std::string>> cross_pairs;
  double shared_threshold = 50.0;
};

// Which filter removed which tags from a cluster.
struct FilterRecord {
  std::string kind;     // "non-complementarity" or "cross-cluster"
  std::string partner;  // cross-cluster only
  std::optional<double> threshold;
  std::vector<std::string> excluded;  // tag names, ascending id

  friend bool operator==(const FilterRecord&, const FilterRecord&) = default;
};

struct ClusterMask {
  std::string cluster_id;
  CandidateMask mask;
  std::vector<FilterRecord> filters;
};

// One combined mask per cluster, in cluster-set order. Unknown cluster ids
// and clusters named in two pairs are config errors.
std::vector<ClusterMask> ComputeMasks(const ClusterSet& set, const FilterSettings& settings);

// Filter stage file form:
// {"clusters":[{"cluster_id":"1","excluded":["t2"],"filters":[...]}]}
std::string MasksToJson(const std::vector<ClusterMask>& masks, const TagUniverse& universe);
std::vector<ClusterMask> ParseMasksJson(std::string_view text, const TagUniverse& universe);

struct ReportDescriptor {
  std::string method;
  std::vector<std::string> tags;                  // disjunctive methods
  std::vector<std::vector<std::string>> clauses;  // cnf: exactly two
  std::size_t size = 0;
  bool optimal = false;
  std::vector<RemovedItem> removed_items;

  friend bool operator==(const ReportDescriptor&, const ReportDescriptor&) = default;
};

struct ReportPercentage {
  std::string tag;
  std::size_t count = 0;
  std::int64_t thousandths = 0;  // percentage * 1000, rounded half-up

  friend bool operator==(const ReportPercentage&, const ReportPercentage&) = default;
};

struct ClusterReport {
  std::string cluster_id;
  std::size_t size = 0;
  std::vector<FilterRecord> filters;
  std::vector<ReportDescriptor> descriptors;
  std::vector<ReportPercentage> tag_percentages;  // universe order

  friend bool operator==(const ClusterReport&, const ClusterReport&) = default;
};

struct ExplainReport {
  std::vector<ClusterReport> clusters;  // ordered by cluster id

  friend bool operator==(const ExplainReport&, const ExplainReport&) = default;
};

struct ExplainOptions {
  std::vector<Method> methods = {Method::kGreedy, Method::kExact, Method::kCnf};
  // Budget, CNF clause solvers and preprocessing. The candidate mask is
  // ignored; masks come from `filters` or `masks`.
  SolverConfig solver;
  FilterSettings filters;
  // Precomputed masks (from the filter stage); overrides `filters`.
  std::optional<std::vector<ClusterMask>> masks;
  // Restrict to these clusters; empty means all.
  std::vector<std::string> cluster_ids;
  std::size_t threads = 1;
};

// Errors are rethrown with the stage ("filter", "solve <method>") and the
// cluster prefixed to the message, keeping kind and code.
ExplainReport RunExplain(const ClusterSet& set, const ExplainOptions& options);

enum class ReportFormat { kJson, kText, kCsv };

ReportFormat ParseReportFormat(std::string_view name);

// json: the document ParseReportJson reads back.
// text: methods as rows, clusters as columns.
// csv:  cluster_id,section,method,clause,tag,value with sections
//       "descriptor" (one row per tag), "removed" (tag column holds the item
//       id, value the reason) and "percentage" (value like "100.000").
std::string RenderReport(const ExplainReport& report, ReportFormat format);

ExplainReport ParseReportJson(std::string_view text);

}  // namespace tagdesc

#endif  // TAGDESC_REPORT_H_

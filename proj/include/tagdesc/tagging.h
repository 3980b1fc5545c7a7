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

// Turning raw feature columns into binary tags.
//
// Numeric features split into a complementary pair at a threshold (column
// median, column mean, or an explicit value): "below" fires when
// value < threshold, "at-or-above" when value >= threshold. Categorical
// features map each observed label to exactly one group; one tag per group.
//
// A tag schema is a JSON array of rule descriptors:
//   {"name": "t1", "kind": "threshold-below", "feature": "age",
//    "basis": "median", "complement_of": "t2"}
//   {"name": "t5", "kind": "threshold-at-or-above", "feature": "Atr3",
//    "basis": "explicit", "threshold": 3}
//   {"name": "t15", "kind": "categorical-member", "feature": "race",
//    "values": ["White"]}
// The universe is the rules in declaration order.

#ifndef TAGDESC_TAGGING_H_
#define TAGDESC_TAGGING_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tagdesc/core.h"
#include "tagdesc/csv.h"
#include "tagdesc/filter.h"

namespace tagdesc {

enum class RuleKind { kThresholdBelow, kThresholdAtOrAbove, kCategoricalMember };
enum class ThresholdBasis { kMedian, kMean, kExplicit };

std::string_view RuleKindName(RuleKind kind);
std::string_view ThresholdBasisName(ThresholdBasis basis);

struct TagRule {
  std::string name;
  RuleKind kind = RuleKind::kThresholdBelow;
  std::string feature;
  ThresholdBasis basis = ThresholdBasis::kExplicit;
  // Set for threshold kinds once resolved against data.
  std::optional<double> threshold;
  // Labels for categorical-member rules.
  std::vector<std::string> values;
  std::string complement_of;

  bool is_threshold() const { return kind != RuleKind::kCategoricalMember; }
};

// Midpoint of the two middle values for even sizes.
double Median(std::span<const double> values);
double Mean(std::span<const double> values);

// (below, at-or-above). `basis` must be median or mean.
std::pair<TagRule, TagRule> DeriveThresholdPair(
    std::span<const double> column, ThresholdBasis basis, std::string_view feature,
    const std::pair<std::string, std::string>& names);

// Explicit-threshold pair; no data needed.
std::pair<TagRule, TagRule> MakeThresholdPair(
    std::string_view feature, double threshold,
    const std::pair<std::string, std::string>& names);

// label -> group name. Group order is the order of first appearance here.
using CategoryGrouping = std::vector<std::pair<std::string, std::string>>;

// Every label of `column` in first-appearance order, grouped to itself.
CategoryGrouping IdentityGrouping(std::span<const std::string> column);

// One categorical-member rule per group, named after the group. Throws a
// config error naming any observed label missing from the grouping, and for
// labels mapped to two groups.
std::vector<TagRule> DeriveCategoricalRules(std::span<const std::string> column,
                                            std::string_view feature,
                                            const CategoryGrouping& grouping);

std::vector<TagRule> ParseTagSchema(std::string_view json_text);
std::vector<TagRule> LoadTagSchema(const std::string& path);
std::string TagSchemaToJson(std::span<const TagRule> rules);

// Fills median/mean thresholds from `table` and checks the schema:
// threshold rules pair up (one below and one at-or-above per feature and
// threshold), categorical rules partition each feature's observed labels.
std::vector<TagRule> ResolveTagSchema(std::span<const TagRule> rules,
                                      const DataTable& table);

// Complement pairs declared through `complement_of`.
ComplementMap SchemaComplementMap(std::span<const TagRule> rules,
                                  const TagUniverse& universe);

// One cluster per distinct label (ordered by ClusterIdLess); item i's tag set
// is the rules row i satisfies. Item ids come from `id_column` when given,
// otherwise the 0-based row index. Missing or unparsable cells in referenced
// columns throw, naming the row and column.
ClusterSet ApplyTags(const DataTable& table, std::span<const std::string> cluster_labels,
                     std::span<const TagRule> rules,
                     std::optional<std::string> id_column = std::nullopt);

// Numeric column, throwing on missing or non-numeric cells.
std::vector<double> NumericColumn(const DataTable& table, std::string_view name);

}  // namespace tagdesc

#endif  // TAGDESC_TAGGING_H_

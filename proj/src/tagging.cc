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

#include "tagdesc/tagging.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#include "json.hpp"
#include "tagdesc/cluster_io.h"

namespace tagdesc {
namespace {

std::optional<double> ParseNumber(std::string_view s) {
  double v = 0.0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

void CheckFinite(std::span<const double> column) {
  if (column.empty()) throw DataError("cannot derive a threshold from an empty column");
  for (std::size_t i = 0; i < column.size(); ++i) {
    if (!std::isfinite(column[i])) {
      throw DataError("non-finite value at position " + std::to_string(i));
    }
  }
}

RuleKind ParseRuleKind(std::string_view s) {
  if (s == "threshold-below") return RuleKind::kThresholdBelow;
  if (s == "threshold-at-or-above") return RuleKind::kThresholdAtOrAbove;
  if (s == "categorical-member") return RuleKind::kCategoricalMember;
  throw ConfigError("tag schema: unknown rule kind '" + std::string(s) + "'");
}

ThresholdBasis ParseBasis(std::string_view s) {
  if (s == "median") return ThresholdBasis::kMedian;
  if (s == "mean") return ThresholdBasis::kMean;
  if (s == "explicit") return ThresholdBasis::kExplicit;
  throw ConfigError("tag schema: unknown basis '" + std::string(s) + "'");
}

bool Fires(const TagRule& rule, const std::string& cell, double numeric) {
  switch (rule.kind) {
    case RuleKind::kThresholdBelow:
      return numeric < *rule.threshold;
    case RuleKind::kThresholdAtOrAbove:
      return numeric >= *rule.threshold;
    case RuleKind::kCategoricalMember:
      return std::find(rule.values.begin(), rule.values.end(), cell) != rule.values.end();
  }
  return false;
}

}  // namespace

std::string_view RuleKindName(RuleKind kind) {
  switch (kind) {
    case RuleKind::kThresholdBelow:
      return "threshold-below";
    case RuleKind::kThresholdAtOrAbove:
      return "threshold-at-or-above";
    case RuleKind::kCategoricalMember:
      return "categorical-member";
  }
  return "unknown";
}

std::string_view ThresholdBasisName(ThresholdBasis basis) {
  switch (basis) {
    case ThresholdBasis::kMedian:
      return "median";
    case ThresholdBasis::kMean:
      return "mean";
    case ThresholdBasis::kExplicit:
      return "explicit";
  }
  return "unknown";
}

double Median(std::span<const double> values) {
  CheckFinite(values);
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  return n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

double Mean(std::span<const double> values) {
  CheckFinite(values);
  return std::accumulate(values.begin(), values.end(), 0.0) /
         static_cast<double>(values.size());
}

std::pair<TagRule, TagRule> MakeThresholdPair(
    std::string_view feature, double threshold,
    const std::pair<std::string, std::string>& names) {
  if (!std::isfinite(threshold)) throw ConfigError("threshold must be finite");
  TagRule below{names.first, RuleKind::kThresholdBelow, std::string(feature),
                ThresholdBasis::kExplicit, threshold, {}, names.second};
  TagRule above{names.second, RuleKind::kThresholdAtOrAbove, std::string(feature),
                ThresholdBasis::kExplicit, threshold, {}, names.first};
  return {below, above};
}

std::pair<TagRule, TagRule> DeriveThresholdPair(
    std::span<const double> column, ThresholdBasis basis, std::string_view feature,
    const std::pair<std::string, std::string>& names) {
  double threshold = 0.0;
  switch (basis) {
    case ThresholdBasis::kMedian:
      threshold = Median(column);
      break;
    case ThresholdBasis::kMean:
      threshold = Mean(column);
      break;
    case ThresholdBasis::kExplicit:
      throw ConfigError("DeriveThresholdPair needs a median or mean basis");
  }
  auto pair = MakeThresholdPair(feature, threshold, names);
  pair.first.basis = pair.second.basis = basis;
  return pair;
}

CategoryGrouping IdentityGrouping(std::span<const std::string> column) {
  CategoryGrouping grouping;
  std::set<std::string> seen;
  for (const auto& label : column) {
    if (seen.insert(label).second) grouping.emplace_back(label, label);
  }
  return grouping;
}

std::vector<TagRule> DeriveCategoricalRules(std::span<const std::string> column,
                                            std::string_view feature,
                                            const CategoryGrouping& grouping) {
  std::unordered_map<std::string, std::string> group_of;
  std::vector<std::string> group_order;
  std::map<std::string, std::vector<std::string>> members;
  for (const auto& [label, group] : grouping) {
    auto [it, inserted] = group_of.emplace(label, group);
    if (!inserted && it->second != group) {
      throw ConfigError("feature '" + std::string(feature) + "': label '" + label +
                        "' is mapped to both '" + it->second + "' and '" + group + "'");
    }
    if (!inserted) continue;
    if (!members.contains(group)) group_order.push_back(group);
    members[group].push_back(label);
  }
  for (const auto& label : column) {
    if (!group_of.contains(label)) {
      throw Error(ErrorKind::kConfig, ErrorCode::kUnmappedLabel,
                  "feature '" + std::string(feature) + "': label '" + label +
                      "' is not mapped to any tag group");
    }
  }
  std::vector<TagRule> rules;
  for (const auto& group : group_order) {
    TagRule rule;
    rule.name = group;
    rule.kind = RuleKind::kCategoricalMember;
    rule.feature = std::string(feature);
    rule.values = members[group];
    rules.push_back(std::move(rule));
  }
  return rules;
}

std::vector<TagRule> ParseTagSchema(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("tag schema: invalid JSON: ") + e.what());
  }
  if (doc.is_object() && doc.contains("rules")) doc = doc.at("rules");
  if (!doc.is_array()) throw ConfigError("tag schema: expected an array of rules");
  std::vector<TagRule> rules;
  try {
    for (const auto& j : doc) {
      TagRule rule;
      rule.name = j.at("name").get<std::string>();
      rule.kind = ParseRuleKind(j.at("kind").get<std::string>());
      rule.feature = j.at("feature").get<std::string>();
      if (j.contains("basis")) rule.basis = ParseBasis(j.at("basis").get<std::string>());
      if (j.contains("threshold")) rule.threshold = j.at("threshold").get<double>();
      if (j.contains("values")) rule.values = j.at("values").get<std::vector<std::string>>();
      if (j.contains("complement_of")) rule.complement_of = j.at("complement_of").get<std::string>();
      if (rule.is_threshold() && rule.basis == ThresholdBasis::kExplicit &&
          !rule.threshold.has_value()) {
        throw ConfigError("tag schema: rule '" + rule.name +
                          "' has an explicit basis but no threshold");
      }
      if (!rule.is_threshold() && rule.values.empty()) {
        throw ConfigError("tag schema: categorical rule '" + rule.name + "' lists no values");
      }
      rules.push_back(std::move(rule));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("tag schema: malformed rule: ") + e.what());
  }
  // Names must form a valid universe.
  std::vector<std::string> names;
  for (const auto& r : rules) names.push_back(r.name);
  TagUniverse check(std::move(names));
  return rules;
}

std::vector<TagRule> LoadTagSchema(const std::string& path) {
  const std::string text = ReadFile(path);
  try {
    return ParseTagSchema(text);
  } catch (const Error& e) {
    throw Error(e.kind(), e.code(), path + ": " + e.what());
  }
}

std::string TagSchemaToJson(std::span<const TagRule> rules) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& r : rules) {
    nlohmann::ordered_json j;
    j["name"] = r.name;
    j["kind"] = RuleKindName(r.kind);
    j["feature"] = r.feature;
    if (r.is_threshold()) {
      j["basis"] = ThresholdBasisName(r.basis);
      if (r.threshold) j["threshold"] = *r.threshold;
    } else {
      j["values"] = r.values;
    }
    if (!r.complement_of.empty()) j["complement_of"] = r.complement_of;
    doc.push_back(std::move(j));
  }
  return doc.dump(1) + "\n";
}

std::vector<double> NumericColumn(const DataTable& table, std::string_view name) {
  const std::size_t col = table.ColumnIndex(name);
  std::vector<double> out;
  out.reserve(table.row_count());
  for (std::size_t r = 0; r < table.row_count(); ++r) {
    const std::string& cell = table.cell(r, col);
    if (IsMissingCell(cell)) {
      throw DataError("row " + std::to_string(r + 1) + ", column '" +
                          std::string(name) + "': missing value",
                      ErrorCode::kMissingValue);
    }
    auto v = ParseNumber(cell);
    if (!v || !std::isfinite(*v)) {
      throw DataError("row " + std::to_string(r + 1) + ", column '" +
                      std::string(name) + "': not a finite number: '" + cell + "'");
    }
    out.push_back(*v);
  }
  return out;
}

std::vector<TagRule> ResolveTagSchema(std::span<const TagRule> rules,
                                      const DataTable& table) {
  std::vector<TagRule> resolved(rules.begin(), rules.end());
  std::map<std::string, double> medians, means;
  for (auto& rule : resolved) {
    table.ColumnIndex(rule.feature);
    if (!rule.is_threshold() || rule.basis == ThresholdBasis::kExplicit) continue;
    auto& cache = rule.basis == ThresholdBasis::kMedian ? medians : means;
    auto it = cache.find(rule.feature);
    if (it == cache.end()) {
      const std::vector<double> column = NumericColumn(table, rule.feature);
      const double value = rule.basis == ThresholdBasis::kMedian ? Median(column) : Mean(column);
      it = cache.emplace(rule.feature, value).first;
    }
    if (rule.threshold && *rule.threshold != it->second) {
      throw ConfigError("tag schema: rule '" + rule.name + "' fixes threshold " +
                        std::to_string(*rule.threshold) + " but its " +
                        std::string(ThresholdBasisName(rule.basis)) + " is " +
                        std::to_string(it->second));
    }
    rule.threshold = it->second;
  }

  // Threshold rules pair up per (feature, basis, threshold).
  std::map<std::tuple<std::string, int, double>, std::pair<int, int>> pairs;
  for (const auto& rule : resolved) {
    if (!rule.is_threshold()) continue;
    auto& [below, above] =
        pairs[{rule.feature, static_cast<int>(rule.basis), *rule.threshold}];
    (rule.kind == RuleKind::kThresholdBelow ? below : above) += 1;
  }
  for (const auto& [key, counts] : pairs) {
    if (counts.first != 1 || counts.second != 1) {
      throw ConfigError("tag schema: feature '" + std::get<0>(key) +
                        "' needs exactly one threshold-below and one "
                        "threshold-at-or-above rule per threshold");
    }
  }

  // Categorical rules partition each feature's observed labels.
  std::map<std::string, CategoryGrouping> groupings;
  for (const auto& rule : resolved) {
    if (rule.is_threshold()) continue;
    for (const auto& v : rule.values) groupings[rule.feature].emplace_back(v, rule.name);
  }
  for (const auto& [feature, grouping] : groupings) {
    std::vector<std::string> column = table.Column(feature);
    for (std::size_t r = 0; r < column.size(); ++r) {
      if (IsMissingCell(column[r])) {
        throw DataError("row " + std::to_string(r + 1) + ", column '" + feature +
                            "': missing value",
                        ErrorCode::kMissingValue);
      }
    }
    DeriveCategoricalRules(column, feature, grouping);
  }
  return resolved;
}

ComplementMap SchemaComplementMap(std::span<const TagRule> rules,
                                  const TagUniverse& universe) {
  std::vector<std::pair<TagId, TagId>> pairs;
  std::set<std::pair<TagId, TagId>> seen;
  for (const auto& rule : rules) {
    if (rule.complement_of.empty()) continue;
    TagId a = universe.Lookup(rule.name);
    TagId b = universe.Lookup(rule.complement_of);
    if (seen.insert({std::min(a, b), std::max(a, b)}).second) {
      pairs.emplace_back(std::min(a, b), std::max(a, b));
    }
  }
  return ComplementMap(std::move(pairs), universe.size());
}

ClusterSet ApplyTags(const DataTable& table, std::span<const std::string> cluster_labels,
                     std::span<const TagRule> rules, std::optional<std::string> id_column) {
  if (cluster_labels.size() != table.row_count()) {
    throw ConfigError("cluster labels have " + std::to_string(cluster_labels.size()) +
                      " entries but the data has " + std::to_string(table.row_count()) +
                      " rows");
  }
  std::vector<std::string> names;
  std::vector<std::size_t> cols;
  for (const auto& rule : rules) {
    if (rule.is_threshold() && !rule.threshold) {
      throw ConfigError("rule '" + rule.name + "' has no resolved threshold");
    }
    names.push_back(rule.name);
    cols.push_back(table.ColumnIndex(rule.feature));
  }
  auto universe = std::make_shared<const TagUniverse>(std::move(names));
  std::optional<std::size_t> id_col;
  if (id_column) id_col = table.ColumnIndex(*id_column);

  std::map<std::string, std::vector<Item>, decltype(&ClusterIdLess)> grouped(&ClusterIdLess);
  for (std::size_t r = 0; r < table.row_count(); ++r) {
    Item item{id_col ? table.cell(r, *id_col) : std::to_string(r), universe->EmptySet()};
    for (std::size_t k = 0; k < rules.size(); ++k) {
      const std::string& cell = table.cell(r, cols[k]);
      if (IsMissingCell(cell)) {
        throw DataError("row " + std::to_string(r + 1) + ", column '" + rules[k].feature +
                            "': missing value",
                        ErrorCode::kMissingValue);
      }
      double numeric = 0.0;
      if (rules[k].is_threshold()) {
        auto v = ParseNumber(cell);
        if (!v) {
          throw DataError("row " + std::to_string(r + 1) + ", column '" +
                          rules[k].feature + "': not a number: '" + cell + "'");
        }
        numeric = *v;
      }
      if (Fires(rules[k], cell, numeric)) item.tags.set(k);
    }
    grouped[cluster_labels[r]].push_back(std::move(item));
  }
  ClusterSet set{universe, {}};
  for (auto& [label, items] : grouped) {
    set.clusters.emplace_back(universe, label, std::move(items), /*allow_untagged=*/true);
  }
  return set;
}

}  // namespace tagdesc

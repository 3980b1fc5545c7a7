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

#include "tagdesc/cluster_io.h"

#include <algorithm>
#include <charconv>
#include <map>

#include "json.hpp"

namespace tagdesc {
namespace {

using nlohmann::ordered_json;

std::optional<long long> AsInteger(std::string_view s) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    return std::nullopt;
  }
  return v;
}

}  // namespace

bool ClusterIdLess(std::string_view a, std::string_view b) {
  const auto ia = AsInteger(a);
  const auto ib = AsInteger(b);
  if (ia && ib) return *ia != *ib ? *ia < *ib : a < b;
  if (ia.has_value() != ib.has_value()) return ia.has_value();
  return a < b;
}

ClusterSet ParseClusterSetJson(std::string_view text, const LoadOptions& options) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(std::string("clusters: invalid JSON: ") + e.what());
  }
  try {
    if (!doc.is_object() || !doc.contains("universe") || !doc.contains("clusters")) {
      throw DataError("clusters: document needs 'universe' and 'clusters'");
    }
    auto universe = std::make_shared<const TagUniverse>(
        doc.at("universe").get<std::vector<std::string>>());
    const std::size_t m = universe->size();

    ClusterSet set{universe, {}};
    for (const auto& jc : doc.at("clusters")) {
      const std::string cluster_id = jc.at("cluster_id").get<std::string>();
      std::vector<Item> items;
      for (const auto& ji : jc.at("items")) {
        Item item{ji.at("id").get<std::string>(), TagSet(m)};
        for (const auto& jt : ji.at("tags")) {
          const auto t = jt.get<long long>();
          if (t < 0 || static_cast<std::size_t>(t) >= m) {
            throw DataError("clusters: cluster " + cluster_id + ", item '" +
                            item.id + "': tag id " + std::to_string(t) +
                            " outside universe of " + std::to_string(m));
          }
          if (item.tags.test(static_cast<std::size_t>(t))) {
            throw DataError("clusters: cluster " + cluster_id + ", item '" +
                            item.id + "': duplicate tag id " + std::to_string(t));
          }
          item.tags.set(static_cast<std::size_t>(t));
        }
        items.push_back(std::move(item));
      }
      set.clusters.emplace_back(universe, cluster_id, std::move(items),
                                options.allow_untagged);
    }
    return set;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("clusters: malformed document: ") + e.what());
  }
}

ClusterSet ParseBinaryMatrix(const DataTable& table, const LoadOptions& options) {
  const std::size_t cluster_col = table.ColumnIndex("cluster_id");
  const std::size_t item_col = table.ColumnIndex("item_id");
  std::vector<std::size_t> tag_cols;
  std::vector<std::string> names;
  for (std::size_t c = 0; c < table.column_count(); ++c) {
    if (c == cluster_col || c == item_col) continue;
    tag_cols.push_back(c);
    names.push_back(table.header()[c]);
  }
  auto universe = std::make_shared<const TagUniverse>(std::move(names));

  std::map<std::string, std::vector<Item>, decltype(&ClusterIdLess)> grouped(
      &ClusterIdLess);
  for (std::size_t r = 0; r < table.row_count(); ++r) {
    Item item{table.cell(r, item_col), TagSet(universe->size())};
    for (std::size_t k = 0; k < tag_cols.size(); ++k) {
      const std::string& cell = table.cell(r, tag_cols[k]);
      if (cell == "1") {
        item.tags.set(k);
      } else if (cell != "0") {
        throw DataError("binary matrix: row " + std::to_string(r + 1) +
                        ", column '" + table.header()[tag_cols[k]] +
                        "': expected 0 or 1, got '" + cell + "'");
      }
    }
    grouped[table.cell(r, cluster_col)].push_back(std::move(item));
  }
  ClusterSet set{universe, {}};
  for (auto& [id, items] : grouped) {
    set.clusters.emplace_back(universe, id, std::move(items), options.allow_untagged);
  }
  return set;
}

ClusterSet LoadClusterSet(const std::string& path, const LoadOptions& options) {
  const std::string text = ReadFile(path);
  try {
    if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0) {
      return ParseBinaryMatrix(ParseCsv(text), options);
    }
    return ParseClusterSetJson(text, options);
  } catch (const Error& e) {
    throw Error(e.kind(), e.code(), path + ": " + e.what());
  }
}

std::string ClusterSetToJson(const ClusterSet& set) {
  // One item per line keeps large cluster files diffable.
  std::string out = "{\n \"universe\": ";
  out += ordered_json(set.universe->names()).dump();
  out += ",\n \"clusters\": [";
  for (std::size_t c = 0; c < set.clusters.size(); ++c) {
    const TaggedCluster& cluster = set.clusters[c];
    out += c == 0 ? "\n" : ",\n";
    out += "  {\"cluster_id\": " + ordered_json(cluster.id()).dump() +
           ", \"items\": [";
    for (std::size_t i = 0; i < cluster.size(); ++i) {
      const Item& item = cluster.items()[i];
      ordered_json ji;
      ji["id"] = item.id;
      ji["tags"] = item.tags.ToIndices();
      out += i == 0 ? "\n   " : ",\n   ";
      out += ji.dump();
    }
    out += cluster.empty() ? "]}" : "\n  ]}";
  }
  out += set.clusters.empty() ? "]\n}\n" : "\n ]\n}\n";
  return out;
}

std::string ClusterSetToBinaryMatrix(const ClusterSet& set) {
  std::string out = "cluster_id,item_id";
  for (const auto& name : set.universe->names()) out += "," + CsvEscape(name);
  out += "\n";
  for (const auto& cluster : set.clusters) {
    for (const Item& item : cluster.items()) {
      out += CsvEscape(cluster.id()) + "," + CsvEscape(item.id);
      for (std::size_t t = 0; t < set.universe->size(); ++t) out += item.tags.test(t) ? ",1" : ",0";
      out += "\n";
    }
  }
  return out;
}

}  // namespace tagdesc

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

#include "tagdesc/filter.h"

#include <cmath>

#include "json.hpp"
#include "tagdesc/csv.h"

namespace tagdesc {

ComplementMap::ComplementMap(std::vector<std::pair<TagId, TagId>> pairs,
                             std::size_t universe_size)
    : pairs_(std::move(pairs)) {
  std::vector<bool> used(universe_size, false);
  for (const auto& [a, b] : pairs_) {
    if (a >= universe_size || b >= universe_size) {
      throw ConfigError("complement map: tag id out of range in pair (" +
                        std::to_string(a) + ", " + std::to_string(b) + ")");
    }
    if (a == b) {
      throw ConfigError("complement map: tag " + std::to_string(a) +
                        " paired with itself");
    }
    for (TagId t : {a, b}) {
      if (used[t]) {
        throw ConfigError("complement map: tag " + std::to_string(t) +
                          " appears in more than one pair");
      }
      used[t] = true;
    }
  }
}

ComplementMap ParseComplementMap(std::string_view json_text,
                                 const TagUniverse& universe) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("complement map: invalid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw ConfigError("complement map: expected an array of pairs");
  std::vector<std::pair<TagId, TagId>> pairs;
  for (const auto& entry : doc) {
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_string() ||
        !entry[1].is_string()) {
      throw ConfigError("complement map: every entry must be two tag names, got " +
                        entry.dump());
    }
    pairs.emplace_back(universe.Lookup(entry[0].get<std::string>()),
                       universe.Lookup(entry[1].get<std::string>()));
  }
  return ComplementMap(std::move(pairs), universe.size());
}

ComplementMap LoadComplementMap(const std::string& path, const TagUniverse& universe) {
  const std::string text = ReadFile(path);
  try {
    return ParseComplementMap(text, universe);
  } catch (const Error& e) {
    throw Error(e.kind(), e.code(), path + ": " + e.what());
  }
}

std::string ComplementMapToJson(const ComplementMap& map, const TagUniverse& universe) {
  nlohmann::json doc = nlohmann::json::array();
  for (const auto& [a, b] : map.pairs()) {
    doc.push_back({universe.name(a), universe.name(b)});
  }
  return doc.dump() + "\n";
}

CandidateMask NonComplementarityFilter(const TaggedCluster& cluster,
                                       const ComplementMap& complements) {
  const std::size_t m = cluster.universe().size();
  // Re-validate against this universe; the map may come from elsewhere.
  ComplementMap checked(complements.pairs(), m);
  const std::vector<std::size_t> freq = TagFrequencies(cluster);
  CandidateMask mask = CandidateMask::All(m);
  for (const auto& [a, b] : checked.pairs()) {
    if (freq[a] > freq[b]) {
      mask.Exclude(b);
    } else if (freq[b] > freq[a]) {
      mask.Exclude(a);
    } else {
      mask.Exclude(std::max(a, b));
    }
  }
  return mask;
}

std::pair<CandidateMask, CandidateMask> CrossClusterFilter(
    const TaggedCluster& cluster_a, const TaggedCluster& cluster_b,
    double threshold_percent) {
  if (!(cluster_a.universe() == cluster_b.universe())) {
    throw ConfigError("cross-cluster filter: clusters " + cluster_a.id() + " and " +
                      cluster_b.id() + " use different tag universes");
  }
  if (!std::isfinite(threshold_percent) || threshold_percent < 0.0 ||
      threshold_percent > 100.0) {
    throw ConfigError("cross-cluster filter: threshold must lie in [0, 100]");
  }
  const std::size_t m = cluster_a.universe().size();
  const std::vector<std::size_t> fa = TagFrequencies(cluster_a);
  const std::vector<std::size_t> fb = TagFrequencies(cluster_b);
  auto above = [&](std::size_t count, std::size_t n) {
    if (n == 0) return false;
    return TagCoverage{0, count, n}.percentage() > threshold_percent;
  };
  CandidateMask mask = CandidateMask::All(m);
  for (std::size_t t = 0; t < m; ++t) {
    if (above(fa[t], cluster_a.size()) && above(fb[t], cluster_b.size())) {
      mask.Exclude(static_cast<TagId>(t));
    }
  }
  return {mask, mask};
}

}  // namespace tagdesc

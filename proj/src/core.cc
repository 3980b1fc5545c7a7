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

#include "tagdesc/core.h"

#include <algorithm>
#include <cstdio>
#include <unordered_set>

namespace tagdesc {

std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kConfig:
      return "config";
    case ErrorKind::kIo:
      return "io";
    case ErrorKind::kInvalidData:
      return "invalid-data";
    case ErrorKind::kInfeasible:
      return "infeasible";
    case ErrorKind::kBudget:
      return "budget";
    case ErrorKind::kInternal:
      return "internal";
  }
  return "unknown";
}

TagUniverse::TagUniverse(std::vector<std::string> names)
    : names_(std::move(names)) {
  index_.reserve(names_.size());
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) {
      throw ConfigError("tag universe: empty tag name at index " +
                        std::to_string(i));
    }
    if (!index_.emplace(names_[i], static_cast<TagId>(i)).second) {
      throw ConfigError("tag universe: duplicate tag name '" + names_[i] + "'");
    }
  }
}

std::optional<TagId> TagUniverse::Find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

TagId TagUniverse::Lookup(std::string_view name) const {
  if (auto id = Find(name)) return *id;
  throw ConfigError("unknown tag '" + std::string(name) + "'");
}

TaggedCluster::TaggedCluster(UniversePtr universe, std::string cluster_id,
                             std::vector<Item> items, bool allow_untagged)
    : universe_(std::move(universe)),
      id_(std::move(cluster_id)),
      items_(std::move(items)) {
  if (universe_ == nullptr) throw ConfigError("cluster without a universe");
  std::unordered_set<std::string_view> seen;
  seen.reserve(items_.size());
  std::vector<std::string> untagged;
  for (const Item& item : items_) {
    if (item.tags.width() != universe_->size()) {
      throw DataError("cluster " + id_ + ": item '" + item.id +
                      "' tag set width does not match the universe");
    }
    if (!seen.insert(item.id).second) {
      throw DataError("cluster " + id_ + ": duplicate item id '" + item.id + "'");
    }
    if (item.tags.none()) untagged.push_back(item.id);
  }
  if (!allow_untagged && !untagged.empty()) {
    std::string names;
    for (const auto& u : untagged) names += (names.empty() ? "" : ", ") + u;
    throw DataError("cluster " + id_ + ": items with empty tag sets: " + names,
                    ErrorCode::kUntaggedItem);
  }
}

std::vector<std::string> TaggedCluster::UntaggedItems() const {
  std::vector<std::string> out;
  for (const Item& item : items_) {
    if (item.tags.none()) out.push_back(item.id);
  }
  return out;
}

TaggedCluster TaggedCluster::Subset(std::span<const std::size_t> keep) const {
  std::vector<Item> items;
  items.reserve(keep.size());
  for (std::size_t i : keep) items.push_back(items_.at(i));
  return TaggedCluster(universe_, id_, std::move(items),
                       /*allow_untagged=*/true);
}

const TaggedCluster& ClusterSet::Find(std::string_view cluster_id) const {
  for (const auto& c : clusters) {
    if (c.id() == cluster_id) return c;
  }
  throw ConfigError("unknown cluster '" + std::string(cluster_id) + "'");
}

std::vector<TagId> DisjunctiveDescriptor::Sorted() const {
  std::vector<TagId> out = tags;
  std::sort(out.begin(), out.end());
  return out;
}

TagSet DisjunctiveDescriptor::ToSet(std::size_t universe_size) const {
  TagSet set(universe_size);
  for (TagId t : tags) {
    if (t >= universe_size) {
      throw Error(ErrorKind::kInvalidData, ErrorCode::kMalformedDescriptor,
                  "descriptor references tag id " + std::to_string(t) +
                      " outside a universe of " + std::to_string(universe_size));
    }
    set.set(t);
  }
  return set;
}

bool CnfDescriptor::ClausesDisjoint() const {
  for (TagId a : clause1.tags) {
    if (std::find(clause2.tags.begin(), clause2.tags.end(), a) !=
        clause2.tags.end()) {
      return false;
    }
  }
  return true;
}

CandidateMask CandidateMask::All(std::size_t universe_size) {
  TagSet bits(universe_size);
  bits.SetAll();
  return CandidateMask(std::move(bits));
}

CandidateMask CandidateMask::operator&(const CandidateMask& other) const {
  if (size() != other.size()) {
    throw ConfigError("cannot combine candidate masks of different sizes");
  }
  TagSet bits = admissible_;
  bits &= other.admissible_;
  return CandidateMask(std::move(bits));
}

std::int64_t TagCoverage::rounded_thousandths() const {
  if (cluster_size == 0) return 0;
  // floor(100000 * count / n + 1/2) in exact integer arithmetic.
  const auto num = static_cast<std::int64_t>(count) * 200000 +
                   static_cast<std::int64_t>(cluster_size);
  return num / (2 * static_cast<std::int64_t>(cluster_size));
}

std::string FormatThousandths(std::int64_t thousandths) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%lld.%03lld",
                static_cast<long long>(thousandths / 1000),
                static_cast<long long>(thousandths % 1000));
  return buf;
}

std::string TagCoverage::Formatted() const {
  return FormatThousandths(rounded_thousandths());
}

bool IsValidDescriptor(const TaggedCluster& cluster,
                       const DisjunctiveDescriptor& d) {
  const TagSet set = d.ToSet(cluster.universe().size());
  for (const Item& item : cluster.items()) {
    if (!item.tags.Intersects(set)) return false;
  }
  return true;
}

std::vector<std::size_t> TagFrequencies(
    const TaggedCluster& cluster,
    std::optional<std::span<const std::size_t>> over) {
  std::vector<std::size_t> freq(cluster.universe().size(), 0);
  auto add = [&](std::size_t item) {
    cluster.tags(item).ForEach([&](std::size_t t) { ++freq[t]; });
  };
  if (over.has_value()) {
    for (std::size_t i : *over) {
      if (i >= cluster.size()) {
        throw ConfigError("item index " + std::to_string(i) +
                          " out of range for cluster " + cluster.id());
      }
      add(i);
    }
  } else {
    for (std::size_t i = 0; i < cluster.size(); ++i) add(i);
  }
  return freq;
}

TagStats TagCoveragePercentages(const TaggedCluster& cluster) {
  if (cluster.empty()) {
    throw Error(ErrorKind::kInvalidData, ErrorCode::kEmptyCluster,
                "cluster " + cluster.id() + " has no items");
  }
  const std::vector<std::size_t> freq = TagFrequencies(cluster);
  TagStats stats;
  stats.cluster_size = cluster.size();
  stats.per_tag.reserve(freq.size());
  for (std::size_t t = 0; t < freq.size(); ++t) {
    stats.per_tag.push_back(
        TagCoverage{static_cast<TagId>(t), freq[t], cluster.size()});
  }
  return stats;
}

}  // namespace tagdesc

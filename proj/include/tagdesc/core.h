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

// Domain types shared by every stage: the tag universe, tagged clusters,
// descriptors, candidate masks and per-cluster coverage statistics.
//
// Tags are dense indexes 0..m-1; names only matter at the I/O boundary.
// All types are immutable once built and safe to share across threads.

#ifndef TAGDESC_CORE_H_
#define TAGDESC_CORE_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tagdesc/error.h"
#include "tagdesc/tag_set.h"

namespace tagdesc {

using TagId = std::uint32_t;
using TagSet = BitVector;

class TagUniverse {
 public:
  // Throws a config error on empty or duplicate names.
  explicit TagUniverse(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(TagId id) const { return names_.at(id); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<TagId> Find(std::string_view name) const;
  // Like Find but throws a config error naming the tag.
  TagId Lookup(std::string_view name) const;

  TagSet EmptySet() const { return TagSet(size()); }

  friend bool operator==(const TagUniverse& a, const TagUniverse& b) {
    return a.names_ == b.names_;
  }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, TagId> index_;
};

using UniversePtr = std::shared_ptr<const TagUniverse>;

struct Item {
  std::string id;
  TagSet tags;

  friend bool operator==(const Item&, const Item&) = default;
};

class TaggedCluster {
 public:
  // Validates item ids (unique) and tag widths. Items with empty tag sets are
  // rejected unless `allow_untagged`; solvers reject them regardless.
  TaggedCluster(UniversePtr universe, std::string cluster_id,
                std::vector<Item> items, bool allow_untagged = false);

  const TagUniverse& universe() const { return *universe_; }
  const UniversePtr& universe_ptr() const { return universe_; }
  const std::string& id() const { return id_; }
  const std::vector<Item>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  const TagSet& tags(std::size_t item) const { return items_[item].tags; }

  // Ids of items whose tag set is empty.
  std::vector<std::string> UntaggedItems() const;

  // Same universe and id, restricted to the listed item indexes (in order).
  TaggedCluster Subset(std::span<const std::size_t> keep) const;

 private:
  UniversePtr universe_;
  std::string id_;
  std::vector<Item> items_;
};

// A universe with clusters over it, the unit of the interchange format.
struct ClusterSet {
  UniversePtr universe;
  std::vector<TaggedCluster> clusters;

  const TaggedCluster& Find(std::string_view cluster_id) const;
};

// Set of tags claimed to hit every item's tag set. `tags` keeps the order in
// which a solver produced them; set semantics apply for validity.
struct DisjunctiveDescriptor {
  std::vector<TagId> tags;

  std::size_t size() const { return tags.size(); }
  std::vector<TagId> Sorted() const;
  // Throws a malformed-descriptor error for out-of-range ids.
  TagSet ToSet(std::size_t universe_size) const;

  friend bool operator==(const DisjunctiveDescriptor&,
                         const DisjunctiveDescriptor&) = default;
};

struct CnfDescriptor {
  DisjunctiveDescriptor clause1;
  DisjunctiveDescriptor clause2;

  std::size_t size() const { return clause1.size() + clause2.size(); }
  bool ClausesDisjoint() const;
};

// Per-tag admissibility flags consumed by the solvers.
class CandidateMask {
 public:
  // All tags admissible.
  static CandidateMask All(std::size_t universe_size);

  explicit CandidateMask(TagSet admissible) : admissible_(std::move(admissible)) {}

  std::size_t size() const { return admissible_.width(); }
  bool admissible(TagId id) const { return admissible_.test(id); }
  void Exclude(TagId id) { admissible_.reset(id); }
  const TagSet& bits() const { return admissible_; }
  std::size_t admissible_count() const { return admissible_.count(); }

  // Logical AND; sizes must match.
  CandidateMask operator&(const CandidateMask& other) const;

  friend bool operator==(const CandidateMask&, const CandidateMask&) = default;

 private:
  TagSet admissible_;
};

// Coverage of one tag within one cluster.
struct TagCoverage {
  TagId tag;
  std::size_t count;
  std::size_t cluster_size;

  double percentage() const {
    return cluster_size == 0 ? 0.0
                             : 100.0 * static_cast<double>(count) /
                                   static_cast<double>(cluster_size);
  }
  // 100 * count / n in thousandths of a percent, rounded half-up.
  std::int64_t rounded_thousandths() const;
  // "67.778", "100.000", "0.000".
  std::string Formatted() const;
};

struct TagStats {
  std::size_t cluster_size = 0;
  std::vector<TagCoverage> per_tag;  // indexed by tag id
};

// Formats thousandths of a percent as a fixed three-decimal string.
std::string FormatThousandths(std::int64_t thousandths);

// True iff every item's tag set intersects `d`.
bool IsValidDescriptor(const TaggedCluster& cluster,
                       const DisjunctiveDescriptor& d);

// Count of listed items whose tag set contains each tag. With no subset,
// every item is counted.
std::vector<std::size_t> TagFrequencies(
    const TaggedCluster& cluster,
    std::optional<std::span<const std::size_t>> over = std::nullopt);

// Throws an empty-cluster error when the cluster has no items.
TagStats TagCoveragePercentages(const TaggedCluster& cluster);

}  // namespace tagdesc

#endif  // TAGDESC_CORE_H_

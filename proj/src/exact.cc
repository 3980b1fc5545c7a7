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

// Branch-and-bound for minimum hitting set.
//
// Search state: the chosen tags, the items not yet hit, and the set of tags
// still allowed in this subtree. At each node the uncovered item with the
// fewest allowed tags is branched on, trying its tags in ascending id; once
// tag t has been explored, later siblings forbid it (any optimum that hits
// the item with t was already reachable through t's branch). A subtree is
// pruned when some uncovered item has no allowed tag left, or when
// depth + lower_bound >= incumbent, where lower_bound counts a greedy packing
// of uncovered items with pairwise disjoint allowed tags (each needs its own
// tag). The incumbent is seeded with the greedy solution.

#include <algorithm>
#include <bit>

#include "solve_internal.h"
#include "tagdesc/solve.h"

namespace tagdesc {
namespace {

using Word = BitVector::Word;

// Rows with a strict admissible subset among the others are dropped: any set
// hitting the subset hits them too. Quadratic, so only for modest sizes.
constexpr std::size_t kDominanceLimit = 4096;

class BranchAndBound {
 public:
  BranchAndBound(std::vector<TagSet> rows, std::size_t universe_size,
                 std::uint64_t node_budget, std::vector<TagId> incumbent)
      : words_(BitVector::WordsFor(universe_size)),
        budget_(node_budget),
        best_(std::move(incumbent)) {
    Reduce(rows);
    item_count_ = rows.size();
    flat_.resize(item_count_ * words_);
    for (std::size_t i = 0; i < item_count_; ++i) {
      std::copy(rows[i].words().begin(), rows[i].words().end(),
                flat_.begin() + static_cast<std::ptrdiff_t>(i * words_));
    }
    const std::size_t max_depth = universe_size + 2;
    levels_.resize(max_depth);
    allowed_.assign(max_depth * words_, 0);
    packed_.assign(words_, 0);
    // Depth 0 allows every tag present in some row.
    for (std::size_t i = 0; i < item_count_; ++i) {
      for (std::size_t w = 0; w < words_; ++w) allowed_[w] |= Row(i)[w];
    }
    levels_[0].resize(item_count_);
    for (std::size_t i = 0; i < item_count_; ++i) levels_[0][i] = static_cast<std::uint32_t>(i);
  }

  void Run() {
    if (item_count_ == 0) {
      best_.clear();
      return;
    }
    if (best_.size() <= 1) return;  // one tag is the least any nonempty instance needs
    Search(0);
  }

  bool aborted() const { return aborted_; }
  std::uint64_t nodes() const { return nodes_; }
  std::vector<TagId> best() const { return best_; }

 private:
  const Word* Row(std::size_t i) const { return flat_.data() + i * words_; }
  Word* Allowed(std::size_t depth) { return allowed_.data() + depth * words_; }

  static void Reduce(std::vector<TagSet>& rows) {
    std::sort(rows.begin(), rows.end(), [](const TagSet& a, const TagSet& b) {
      const std::size_t ca = a.count(), cb = b.count();
      return ca != cb ? ca < cb : a < b;
    });
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    if (rows.size() > kDominanceLimit) return;
    std::vector<TagSet> kept;
    kept.reserve(rows.size());
    // Sorted by size, so any strict subset of rows[i] precedes it.
    for (const TagSet& row : rows) {
      bool dominated = false;
      for (const TagSet& smaller : kept) {
        TagSet extra = smaller;
        extra.Subtract(row);
        if (extra.none()) {
          dominated = true;
          break;
        }
      }
      if (!dominated) kept.push_back(row);
    }
    rows = std::move(kept);
  }

  void Search(std::size_t depth) {
    if (++nodes_ > budget_) {
      aborted_ = true;
      return;
    }
    const std::vector<std::uint32_t>& uncovered = levels_[depth];
    if (uncovered.empty()) {
      if (chosen_.size() < best_.size()) best_ = chosen_;
      return;
    }
    const Word* allowed = Allowed(depth);

    std::size_t branch_item = 0;
    int branch_size = 1 << 30;
    std::size_t lower_bound = 0;
    std::fill(packed_.begin(), packed_.end(), 0);
    for (std::uint32_t i : uncovered) {
      const Word* row = Row(i);
      int size = 0;
      bool disjoint = true;
      for (std::size_t w = 0; w < words_; ++w) {
        const Word a = row[w] & allowed[w];
        size += std::popcount(a);
        if ((a & packed_[w]) != 0) disjoint = false;
      }
      if (size == 0) return;  // this item can no longer be hit
      if (size < branch_size) {
        branch_size = size;
        branch_item = i;
      }
      if (disjoint) {
        ++lower_bound;
        for (std::size_t w = 0; w < words_; ++w) packed_[w] |= row[w] & allowed[w];
      }
    }
    if (depth + lower_bound >= best_.size()) return;

    // Copy the branch tags out; packed_ is reused by children.
    std::vector<TagId> branch_tags;
    branch_tags.reserve(static_cast<std::size_t>(branch_size));
    for (std::size_t w = 0; w < words_; ++w) {
      Word bits = Row(branch_item)[w] & allowed[w];
      while (bits != 0) {
        branch_tags.push_back(static_cast<TagId>(w * 64 + std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }

    Word* child_allowed = Allowed(depth + 1);
    std::copy(allowed, allowed + words_, child_allowed);
    std::vector<std::uint32_t>& next = levels_[depth + 1];
    for (TagId t : branch_tags) {
      if (depth + 1 >= best_.size()) return;
      const std::size_t tw = t / 64;
      const Word tbit = Word{1} << (t % 64);
      next.clear();
      for (std::uint32_t i : uncovered) {
        if ((Row(i)[tw] & tbit) == 0) next.push_back(i);
      }
      chosen_.push_back(t);
      Search(depth + 1);
      chosen_.pop_back();
      if (aborted_) return;
      child_allowed[tw] &= ~tbit;
    }
  }

  std::size_t words_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
  std::size_t item_count_ = 0;
  std::vector<Word> flat_;
  std::vector<std::vector<std::uint32_t>> levels_;
  std::vector<Word> allowed_;
  std::vector<Word> packed_;
  std::vector<TagId> chosen_;
  std::vector<TagId> best_;
};

}  // namespace

namespace internal {

ExactResult ExactOnRows(std::vector<TagSet> rows, const CandidateMask& mask,
                        std::uint64_t node_budget) {
  DisjunctiveDescriptor greedy = GreedyOnRows(rows, mask);
  BranchAndBound search(std::move(rows), mask.size(), node_budget,
                        std::move(greedy.tags));
  search.Run();

  ExactResult result;
  result.descriptor.tags = search.best();
  std::sort(result.descriptor.tags.begin(), result.descriptor.tags.end());
  result.optimal = !search.aborted();
  result.nodes = search.nodes();
  return result;
}

}  // namespace internal

ExactResult SolveMinimumHittingSet(const TaggedCluster& cluster,
                                   const SolverConfig& config) {
  config.Validate();
  const CandidateMask mask = internal::ResolveMask(cluster, config.candidate_mask);
  return internal::ExactOnRows(internal::AdmissibleRows(cluster, mask), mask,
                               config.node_budget);
}

DisjunctiveDescriptor ExactMinimumHittingSet(const TaggedCluster& cluster,
                                             const SolverConfig& config) {
  ExactResult result = SolveMinimumHittingSet(cluster, config);
  if (!result.optimal) {
    throw BudgetExceededError(std::move(result.descriptor), result.nodes);
  }
  return std::move(result.descriptor);
}

}  // namespace tagdesc

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

#ifndef TAGDESC_TAG_SET_H_
#define TAGDESC_TAG_SET_H_

#include <algorithm>
#include <array>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tagdesc/simd/kernels.h"

namespace tagdesc {

// Fixed-width bit vector. Used both for per-item tag sets (width = tag
// count) and for per-tag item columns (width = item count). Bits past
// width() are always zero. Up to kInlineWords words live inline, so typical
// tag sets never touch the heap.
class BitVector {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;
  static constexpr std::size_t kInlineWords = 2;

  BitVector() = default;
  explicit BitVector(std::size_t width) : width_(width) {
    if (WordsFor(width) > kInlineWords) heap_.assign(WordsFor(width), 0);
  }

  static std::size_t WordsFor(std::size_t width) {
    return (width + kWordBits - 1) / kWordBits;
  }

  std::size_t width() const { return width_; }
  std::size_t word_count() const { return WordsFor(width_); }
  std::span<const Word> words() const { return {data(), word_count()}; }
  std::span<Word> mutable_words() { return {data(), word_count()}; }

  bool test(std::size_t i) const {
    return (data()[i / kWordBits] >> (i % kWordBits)) & 1u;
  }
  void set(std::size_t i) { data()[i / kWordBits] |= Word{1} << (i % kWordBits); }
  void reset(std::size_t i) {
    data()[i / kWordBits] &= ~(Word{1} << (i % kWordBits));
  }
  void SetAll() {
    for (auto& w : mutable_words()) w = ~Word{0};
    ClearTail();
  }

  std::size_t count() const {
    if (is_inline()) {
      return static_cast<std::size_t>(std::popcount(inline_[0]) + std::popcount(inline_[1]));
    }
    return simd::Popcount(words());
  }
  bool none() const {
    for (Word w : words()) {
      if (w != 0) return false;
    }
    return true;
  }
  bool any() const { return !none(); }

  bool Intersects(const BitVector& other) const {
    if (is_inline() && other.is_inline()) {
      return ((inline_[0] & other.inline_[0]) | (inline_[1] & other.inline_[1])) != 0;
    }
    return simd::Intersects(words(), other.words());
  }
  std::size_t IntersectionCount(const BitVector& other) const {
    if (is_inline() && other.is_inline()) {
      return static_cast<std::size_t>(std::popcount(inline_[0] & other.inline_[0]) +
                                      std::popcount(inline_[1] & other.inline_[1]));
    }
    return simd::AndPopcount(words(), other.words());
  }
  BitVector& operator|=(const BitVector& other) {
    simd::OrInplace(mutable_words(), other.words());
    return *this;
  }
  // this &= ~other
  BitVector& Subtract(const BitVector& other) {
    simd::AndNotInplace(mutable_words(), other.words());
    return *this;
  }
  BitVector& operator&=(const BitVector& other) {
    Word* w = data();
    const Word* o = other.data();
    for (std::size_t i = 0; i < word_count(); ++i) w[i] &= o[i];
    return *this;
  }

  // Calls fn(index) for every set bit in ascending order.
  template <typename Fn>
  void ForEach(Fn&& fn) const {
    const Word* words = data();
    for (std::size_t w = 0; w < word_count(); ++w) {
      Word bits = words[w];
      while (bits != 0) {
        const int offset = std::countr_zero(bits);
        fn(w * kWordBits + static_cast<std::size_t>(offset));
        bits &= bits - 1;
      }
    }
  }

  // Index of the lowest set bit, or width() if none.
  std::size_t FindFirst() const {
    const Word* words = data();
    for (std::size_t w = 0; w < word_count(); ++w) {
      if (words[w] != 0) {
        return w * kWordBits + static_cast<std::size_t>(std::countr_zero(words[w]));
      }
    }
    return width_;
  }

  std::vector<std::size_t> ToIndices() const {
    std::vector<std::size_t> out;
    ForEach([&](std::size_t i) { out.push_back(i); });
    return out;
  }

  friend bool operator==(const BitVector& a, const BitVector& b) {
    return a.width_ == b.width_ && std::equal(a.data(), a.data() + a.word_count(), b.data());
  }
  friend std::strong_ordering operator<=>(const BitVector& a, const BitVector& b) {
    if (auto c = a.width_ <=> b.width_; c != 0) return c;
    return std::lexicographical_compare_three_way(a.data(), a.data() + a.word_count(),
                                                  b.data(), b.data() + b.word_count());
  }

 private:
  bool is_inline() const { return WordsFor(width_) <= kInlineWords; }
  const Word* data() const { return is_inline() ? inline_.data() : heap_.data(); }
  Word* data() { return is_inline() ? inline_.data() : heap_.data(); }

  void ClearTail() {
    if (const std::size_t rem = width_ % kWordBits; rem != 0) {
      data()[word_count() - 1] &= (Word{1} << rem) - 1;
    }
  }

  std::size_t width_ = 0;
  std::array<Word, kInlineWords> inline_ = {};
  std::vector<Word> heap_;
};

}  // namespace tagdesc

#endif  // TAGDESC_TAG_SET_H_

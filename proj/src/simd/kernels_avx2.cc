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

// AVX2 variants. This file is compiled with -mavx2 -mfma -mpopcnt and must
// only be entered after IsaSupported(Isa::kAvx2) returned true.

#include <immintrin.h>

#include <bit>

#include "tagdesc/simd/kernels.h"

namespace tagdesc::simd::internal {
namespace {

// Per-byte popcount through a nibble lookup table (Mula et al.), summed into
// four 64-bit lanes with SAD against zero.
inline __m256i PopcountEpi64(__m256i v) {
  const __m256i lookup =
      _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4, 0, 1, 1,
                       2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low_mask = _mm256_set1_epi8(0x0f);
  const __m256i lo = _mm256_and_si256(v, low_mask);
  const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
  const __m256i counts = _mm256_add_epi8(_mm256_shuffle_epi8(lookup, lo),
                                         _mm256_shuffle_epi8(lookup, hi));
  return _mm256_sad_epu8(counts, _mm256_setzero_si256());
}

inline std::uint64_t HorizontalSum(__m256i v) {
  const __m128i sum = _mm_add_epi64(_mm256_castsi256_si128(v),
                                    _mm256_extracti128_si256(v, 1));
  return static_cast<std::uint64_t>(_mm_cvtsi128_si64(sum)) +
         static_cast<std::uint64_t>(_mm_extract_epi64(sum, 1));
}

inline __m256i Load(const std::uint64_t* p) {
  return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
}

inline void Store(std::uint64_t* p, __m256i v) {
  _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v);
}

std::uint64_t Avx2AndPopcount(const std::uint64_t* a, const std::uint64_t* b,
                              std::size_t n) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_add_epi64(acc,
                           PopcountEpi64(_mm256_and_si256(Load(a + i),
                                                          Load(b + i))));
  }
  std::uint64_t total = HorizontalSum(acc);
  for (; i < n; ++i) total += _mm_popcnt_u64(a[i] & b[i]);
  return total;
}

std::uint64_t Avx2Popcount(const std::uint64_t* a, std::size_t n) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_add_epi64(acc, PopcountEpi64(Load(a + i)));
  }
  std::uint64_t total = HorizontalSum(acc);
  for (; i < n; ++i) total += _mm_popcnt_u64(a[i]);
  return total;
}

void Avx2AndNotInplace(std::uint64_t* dst, const std::uint64_t* src,
                       std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    // andnot(x, y) = ~x & y
    Store(dst + i, _mm256_andnot_si256(Load(src + i), Load(dst + i)));
  }
  for (; i < n; ++i) dst[i] &= ~src[i];
}

void Avx2OrInplace(std::uint64_t* dst, const std::uint64_t* src,
                   std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    Store(dst + i, _mm256_or_si256(Load(dst + i), Load(src + i)));
  }
  for (; i < n; ++i) dst[i] |= src[i];
}

bool Avx2Intersects(const std::uint64_t* a, const std::uint64_t* b,
                    std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    if (!_mm256_testz_si256(Load(a + i), Load(b + i))) return true;
  }
  for (; i < n; ++i) {
    if ((a[i] & b[i]) != 0) return true;
  }
  return false;
}

double Avx2SquaredDistance(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_fmadd_pd(d, d, acc);
  }
  const __m128d pair = _mm_add_pd(_mm256_castpd256_pd128(acc),
                                  _mm256_extractf128_pd(acc, 1));
  double total = _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
  for (; i < n; ++i) {
    const double d = a[i] - b[i];
    total += d * d;
  }
  return total;
}

constexpr KernelTable kAvx2Table = {
    Isa::kAvx2,        Avx2AndPopcount, Avx2Popcount,
    Avx2AndNotInplace, Avx2OrInplace,   Avx2Intersects,
    Avx2SquaredDistance,
};

}  // namespace

const KernelTable& Avx2Kernels() { return kAvx2Table; }

}  // namespace tagdesc::simd::internal

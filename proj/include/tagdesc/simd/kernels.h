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

// Data-parallel inner loops used by the solvers and by k-means.
//
// Every kernel has a portable scalar reference implementation and, on
// x86-64, an AVX2 variant compiled in a separate translation unit with
// -mavx2. The variant is selected once at startup from CPUID; setting the
// environment variable TAGDESC_ISA=scalar (or calling ForceIsa) pins the
// reference path. Bitset kernels are bit-exact across variants; the
// floating-point distance kernel differs only by summation order.

#ifndef TAGDESC_SIMD_KERNELS_H_
#define TAGDESC_SIMD_KERNELS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace tagdesc::simd {

enum class Isa { kScalar, kAvx2 };

std::string_view IsaName(Isa isa);

struct KernelTable {
  Isa isa;
  // popcount(a & b) over n words.
  std::uint64_t (*and_popcount)(const std::uint64_t* a, const std::uint64_t* b,
                                std::size_t n);
  std::uint64_t (*popcount)(const std::uint64_t* a, std::size_t n);
  // dst &= ~src
  void (*and_not_inplace)(std::uint64_t* dst, const std::uint64_t* src,
                          std::size_t n);
  // dst |= src
  void (*or_inplace)(std::uint64_t* dst, const std::uint64_t* src,
                     std::size_t n);
  // (a & b) != 0
  bool (*intersects)(const std::uint64_t* a, const std::uint64_t* b,
                     std::size_t n);
  double (*squared_distance)(const double* a, const double* b, std::size_t n);
};

const KernelTable& ScalarKernels();

// True when the running CPU can execute `isa`.
bool IsaSupported(Isa isa);

// Table for a specific ISA. Throws tagdesc::Error if unsupported.
const KernelTable& KernelsFor(Isa isa);

// The active table (best supported unless forced).
const KernelTable& Kernels();
Isa ActiveIsa();

// Pins the active table; throws if `isa` is unsupported. Not thread-safe
// with respect to concurrent kernel calls; call before spawning workers.
void ForceIsa(Isa isa);

// Span conveniences over the active table.
inline std::uint64_t AndPopcount(std::span<const std::uint64_t> a,
                                 std::span<const std::uint64_t> b) {
  return Kernels().and_popcount(a.data(), b.data(), a.size());
}
inline std::uint64_t Popcount(std::span<const std::uint64_t> a) {
  return Kernels().popcount(a.data(), a.size());
}
inline void AndNotInplace(std::span<std::uint64_t> dst,
                          std::span<const std::uint64_t> src) {
  Kernels().and_not_inplace(dst.data(), src.data(), dst.size());
}
inline void OrInplace(std::span<std::uint64_t> dst,
                      std::span<const std::uint64_t> src) {
  Kernels().or_inplace(dst.data(), src.data(), dst.size());
}
inline bool Intersects(std::span<const std::uint64_t> a,
                       std::span<const std::uint64_t> b) {
  return Kernels().intersects(a.data(), b.data(), a.size());
}
inline double SquaredDistance(std::span<const double> a,
                              std::span<const double> b) {
  return Kernels().squared_distance(a.data(), b.data(), a.size());
}

namespace internal {
#if defined(__x86_64__) || defined(_M_X64)
const KernelTable& Avx2Kernels();
#endif
}  // namespace internal

}  // namespace tagdesc::simd

#endif  // TAGDESC_SIMD_KERNELS_H_

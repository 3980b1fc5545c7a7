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

#include "tagdesc/simd/kernels.h"

#include <atomic>
#include <bit>
#include <cstdlib>
#include <string>

#include "tagdesc/error.h"

namespace tagdesc::simd {
namespace {

std::uint64_t ScalarAndPopcount(const std::uint64_t* a, const std::uint64_t* b,
                                std::size_t n) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < n; ++i) total += std::popcount(a[i] & b[i]);
  return total;
}

std::uint64_t ScalarPopcount(const std::uint64_t* a, std::size_t n) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < n; ++i) total += std::popcount(a[i]);
  return total;
}

void ScalarAndNotInplace(std::uint64_t* dst, const std::uint64_t* src,
                         std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] &= ~src[i];
}

void ScalarOrInplace(std::uint64_t* dst, const std::uint64_t* src,
                     std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] |= src[i];
}

bool ScalarIntersects(const std::uint64_t* a, const std::uint64_t* b,
                      std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if ((a[i] & b[i]) != 0) return true;
  }
  return false;
}

double ScalarSquaredDistance(const double* a, const double* b, std::size_t n) {
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a[i] - b[i];
    total += d * d;
  }
  return total;
}

constexpr KernelTable kScalarTable = {
    Isa::kScalar,        ScalarAndPopcount, ScalarPopcount,
    ScalarAndNotInplace, ScalarOrInplace,   ScalarIntersects,
    ScalarSquaredDistance,
};

const KernelTable* BestTable() {
  if (const char* forced = std::getenv("TAGDESC_ISA");
      forced != nullptr && std::string(forced) == "scalar") {
    return &kScalarTable;
  }
#if defined(__x86_64__) || defined(_M_X64)
  if (IsaSupported(Isa::kAvx2)) return &internal::Avx2Kernels();
#endif
  return &kScalarTable;
}

std::atomic<const KernelTable*>& ActiveSlot() {
  static std::atomic<const KernelTable*> slot{BestTable()};
  return slot;
}

}  // namespace

std::string_view IsaName(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
  }
  return "unknown";
}

const KernelTable& ScalarKernels() { return kScalarTable; }

bool IsaSupported(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
#if (defined(__x86_64__) || defined(_M_X64)) && (defined(__GNUC__) || defined(__clang__))
      __builtin_cpu_init();
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma") &&
             __builtin_cpu_supports("popcnt");
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& KernelsFor(Isa isa) {
  if (!IsaSupported(isa)) {
    throw Error(ErrorKind::kConfig,
                "instruction set not supported on this CPU: " +
                    std::string(IsaName(isa)));
  }
#if defined(__x86_64__) || defined(_M_X64)
  if (isa == Isa::kAvx2) return internal::Avx2Kernels();
#endif
  return kScalarTable;
}

const KernelTable& Kernels() {
  return *ActiveSlot().load(std::memory_order_relaxed);
}

Isa ActiveIsa() { return Kernels().isa; }

void ForceIsa(Isa isa) {
  ActiveSlot().store(&KernelsFor(isa), std::memory_order_relaxed);
}

}  // namespace tagdesc::simd

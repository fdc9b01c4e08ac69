// Copyright 2023 The Authors.
//
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

#pragma once

#include <bit>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

#include "potts_hodge/error.hpp"

namespace potts_hodge {

// Subsets of the ground set are bitmasks: bit i holds element i + 1.
using Subset = std::uint64_t;

inline constexpr int kMaxGroundSet = 62;
inline constexpr int kDefaultEnumerationCap = 20;

inline int Cardinality(Subset s) { return std::popcount(s); }

inline constexpr Subset Singleton(int index) { return Subset{1} << index; }

inline constexpr bool Contains(Subset s, int index) {
  return (s >> index) & Subset{1};
}

inline constexpr Subset FullSet(int n) {
  return n == 0 ? Subset{0} : (~Subset{0} >> (64 - n));
}

inline std::vector<int> Elements(Subset s) {
  std::vector<int> out;
  while (s != 0) {
    out.push_back(std::countr_zero(s));
    s &= s - 1;
  }
  return out;
}

inline Subset FromElements(const std::vector<int>& indices) {
  Subset s = 0;
  for (int i : indices) s |= Singleton(i);
  return s;
}

// Largest ground set for which exhaustive 2^n enumeration is allowed. The
// POTTS_HODGE_MAX_N environment variable overrides the default of 20.
inline int EnumerationCap() {
  if (const char* env = std::getenv("POTTS_HODGE_MAX_N")) {
    char* end = nullptr;
    long value = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && value >= 0 && value <= kMaxGroundSet) {
      return static_cast<int>(value);
    }
  }
  return kDefaultEnumerationCap;
}

inline void RequireEnumerable(int n, const char* what) {
  int cap = EnumerationCap();
  if (n > cap) {
    throw Error(ErrorKind::kResourceLimit,
                std::string(what) + " needs 2^" + std::to_string(n) +
                    " subsets; enumeration cap is n <= " + std::to_string(cap));
  }
}

// Binomial coefficient as an exact unsigned integer; n stays small here.
inline std::uint64_t Binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    result = result * static_cast<std::uint64_t>(n - k + i) /
             static_cast<std::uint64_t>(i);
  }
  return result;
}

}  // namespace potts_hodge

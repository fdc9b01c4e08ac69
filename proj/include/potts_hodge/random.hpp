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

// Seeded generators. Every sampled value is a function of (seed, index) so
// results never depend on scheduling.

#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

#include "potts_hodge/scalar.hpp"

namespace potts_hodge {

inline std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t DeriveSeed(std::uint64_t seed,
                                std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = SplitMix64(seed);
  for (std::uint64_t p : path) h = SplitMix64(h ^ SplitMix64(p + 0x632be59bd9b4e019ULL));
  return h;
}

// Thin wrapper so draws do not depend on the standard library's
// distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform integer in [lo, hi].
  long long Uniform(long long lo, long long hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return lo + static_cast<long long>(x % span);
  }

  bool Bernoulli(int numerator, int denominator) {
    return Uniform(0, denominator - 1) < numerator;
  }

  std::uint64_t Next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

// Integer vector with coordinates in [lo, hi].
inline std::vector<Rational> SmallIntegerVector(Rng& rng, int dim, int lo,
                                                int hi) {
  std::vector<Rational> v(dim);
  for (auto& x : v) x = Rational(static_cast<long>(rng.Uniform(lo, hi)));
  return v;
}

// num/den with num, den uniform in [1, 100].
inline Rational PositiveRational(Rng& rng, int bound = 100) {
  Rational r(static_cast<long>(rng.Uniform(1, bound)),
             static_cast<long>(rng.Uniform(1, bound)));
  r.canonicalize();
  return r;
}

// Uniform-ish rational in (0, 1]: num <= den, both in [1, bound].
inline Rational UnitIntervalRational(Rng& rng, int bound = 100) {
  long den = static_cast<long>(rng.Uniform(1, bound));
  long num = static_cast<long>(rng.Uniform(1, den));
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace potts_hodge

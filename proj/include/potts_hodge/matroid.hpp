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

// Matroids given by a rank oracle on bitmask subsets, the standard
// constructors (uniform, graphic, linear over GF(p), explicit rank table),
// minors, and the structural queries used by the evaluation layer.

#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "potts_hodge/error.hpp"
#include "potts_hodge/subset.hpp"

namespace potts_hodge {

enum class Provenance {
  kUniform,
  kGraphic,
  kLinear,
  kRankTable,
  kMinor,
  kSimplification,
};

inline const char* ProvenanceName(Provenance p) {
  switch (p) {
    case Provenance::kUniform: return "uniform";
    case Provenance::kGraphic: return "graphic";
    case Provenance::kLinear: return "linear";
    case Provenance::kRankTable: return "rank_table";
    case Provenance::kMinor: return "minor";
    case Provenance::kSimplification: return "simplification";
  }
  return "unknown";
}

using RankOracle = std::function<int(Subset)>;

// Immutable after construction and cheap to copy (shared storage). When the
// ground set is within the enumeration cap the full rank table is memoized;
// otherwise rank queries go through the oracle.
class Matroid {
 public:
  Matroid() : Matroid(FromTable(0, {0}, Provenance::kRankTable)) {}

  static Matroid FromOracle(int n, RankOracle oracle, Provenance provenance) {
    if (n < 0 || n > kMaxGroundSet) {
      throw Error(ErrorKind::kInvalidParameters,
                  "ground set size must be in [0, 62]");
    }
    Matroid m(n, provenance);
    if (n <= EnumerationCap()) {
      std::vector<std::uint8_t> table(std::size_t{1} << n);
      for (Subset a = 0; a < table.size(); ++a) {
        table[a] = static_cast<std::uint8_t>(oracle(a));
      }
      m.table_ = std::make_shared<const std::vector<std::uint8_t>>(
          std::move(table));
    } else {
      m.oracle_ = std::make_shared<const RankOracle>(std::move(oracle));
    }
    return m;
  }

  static Matroid FromTable(int n, std::vector<std::uint8_t> table,
                           Provenance provenance) {
    Matroid m(n, provenance);
    m.table_ =
        std::make_shared<const std::vector<std::uint8_t>>(std::move(table));
    return m;
  }

  int size() const { return n_; }
  Provenance provenance() const { return provenance_; }

  int Rank(Subset a) const {
    if (table_) return (*table_)[a];
    return (*oracle_)(a);
  }
  int Rank() const { return Rank(FullSet(n_)); }

  bool IsIndependent(Subset a) const { return Rank(a) == Cardinality(a); }

  // Full table indexed by bitmask; requires n within the enumeration cap.
  std::vector<int> RankTable() const {
    RequireEnumerable(n_, "rank table");
    std::vector<int> out(std::size_t{1} << n_);
    for (Subset a = 0; a < out.size(); ++a) out[a] = Rank(a);
    return out;
  }

  bool SameRankTable(const Matroid& other) const {
    if (n_ != other.n_) return false;
    RequireEnumerable(n_, "rank table comparison");
    for (Subset a = 0; a <= FullSet(n_); ++a) {
      if (Rank(a) != other.Rank(a)) return false;
    }
    return true;
  }

 private:
  Matroid(int n, Provenance provenance) : n_(n), provenance_(provenance) {}

  int n_ = 0;
  Provenance provenance_ = Provenance::kRankTable;
  std::shared_ptr<const std::vector<std::uint8_t>> table_;
  std::shared_ptr<const RankOracle> oracle_;
};

// A failed rank axiom with its witness. For the unit-increase and
// monotonicity axioms `a` is the set and `element` the added element; for
// submodularity the witness pair is (a, b).
struct AxiomViolation {
  enum class Axiom { kEmptySet, kUnitIncrease, kMonotonicity, kSubmodularity };
  Axiom axiom;
  Subset a = 0;
  Subset b = 0;
  int element = -1;

  std::string Describe() const {
    switch (axiom) {
      case Axiom::kEmptySet:
        return "rank of the empty set is nonzero";
      case Axiom::kUnitIncrease:
        return "unit increase fails at A=" + std::to_string(a) +
               ", e=" + std::to_string(element + 1);
      case Axiom::kMonotonicity:
        return "monotonicity fails at A=" + std::to_string(a) +
               ", e=" + std::to_string(element + 1);
      case Axiom::kSubmodularity:
        return "submodularity fails at A=" + std::to_string(a) +
               ", B=" + std::to_string(b);
    }
    return "";
  }
};

// Exhaustive check of the rank axioms. Submodularity is checked in its local
// form r(A+e) + r(A+f) >= r(A+e+f) + r(A), which is equivalent to the global
// inequality for set functions; the witness is reported as (A+e, A+f).
inline std::optional<AxiomViolation> ValidateRankAxioms(
    int n, const std::function<int(Subset)>& rank) {
  RequireEnumerable(n, "rank axiom validation");
  using Axiom = AxiomViolation::Axiom;
  if (rank(0) != 0) return AxiomViolation{Axiom::kEmptySet};
  const Subset full = FullSet(n);
  for (Subset a = 0;; ++a) {
    const int ra = rank(a);
    for (int e = 0; e < n; ++e) {
      if (Contains(a, e)) continue;
      const int rae = rank(a | Singleton(e));
      if (rae < ra) return AxiomViolation{Axiom::kMonotonicity, a, 0, e};
      if (rae > ra + 1) return AxiomViolation{Axiom::kUnitIncrease, a, 0, e};
    }
    if (a == full) break;
  }
  for (Subset a = 0;; ++a) {
    const int ra = rank(a);
    for (int e = 0; e < n; ++e) {
      if (Contains(a, e)) continue;
      const int rae = rank(a | Singleton(e));
      for (int f = e + 1; f < n; ++f) {
        if (Contains(a, f)) continue;
        const int raf = rank(a | Singleton(f));
        const int raef = rank(a | Singleton(e) | Singleton(f));
        if (rae + raf < raef + ra) {
          return AxiomViolation{Axiom::kSubmodularity, a | Singleton(e),
                                a | Singleton(f), -1};
        }
      }
    }
    if (a == full) break;
  }
  return std::nullopt;
}

inline std::optional<AxiomViolation> ValidateRankAxioms(const Matroid& m) {
  return ValidateRankAxioms(m.size(), [&m](Subset a) { return m.Rank(a); });
}

inline void RequireValid(const Matroid& m) {
  if (auto v = ValidateRankAxioms(m)) {
    throw Error(ErrorKind::kNotAMatroid, v->Describe());
  }
}

// U_{r,n}: rank(A) = min(|A|, r).
inline Matroid MakeUniform(int r, int n, bool validate = false) {
  if (n < 0 || r < 0 || r > n) {
    throw Error(ErrorKind::kInvalidParameters,
                "uniform matroid needs 0 <= r <= n, got r=" +
                    std::to_string(r) + ", n=" + std::to_string(n));
  }
  Matroid m = Matroid::FromOracle(
      n, [r](Subset a) { return std::min(Cardinality(a), r); },
      Provenance::kUniform);
  if (validate) RequireValid(m);
  return m;
}

namespace internal {

class UnionFind {
 public:
  explicit UnionFind(int size) : parent_(size) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int Find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool Union(int x, int y) {
    x = Find(x);
    y = Find(y);
    if (x == y) return false;
    parent_[x] = y;
    return true;
  }

 private:
  std::vector<int> parent_;
};

inline bool IsPrime(long long p) {
  if (p < 2) return false;
  for (long long d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

inline long long ModInverse(long long a, long long p) {
  long long result = 1, base = a % p, e = p - 2;
  while (e > 0) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result;
}

}  // namespace internal

// Cycle matroid of a multigraph. Vertices are 1..vertices; self-loops and
// parallel edges are allowed. rank(A) = vertices - components(V, A).
inline Matroid MakeGraphic(int vertices,
                           const std::vector<std::pair<int, int>>& edges,
                           bool validate = false) {
  if (vertices < 1) {
    throw Error(ErrorKind::kInvalidParameters, "graph needs >= 1 vertex");
  }
  for (const auto& [u, v] : edges) {
    if (u < 1 || u > vertices || v < 1 || v > vertices) {
      throw Error(ErrorKind::kInvalidParameters,
                  "edge endpoint out of range: (" + std::to_string(u) + "," +
                      std::to_string(v) + ")");
    }
  }
  const int n = static_cast<int>(edges.size());
  Matroid m = Matroid::FromOracle(
      n,
      [vertices, edges](Subset a) {
        internal::UnionFind uf(vertices + 1);
        int rank = 0;
        for (int e : Elements(a)) {
          if (uf.Union(edges[e].first, edges[e].second)) ++rank;
        }
        return rank;
      },
      Provenance::kGraphic);
  if (validate) RequireValid(m);
  return m;
}

// Column matroid of an r x n matrix over GF(p); entries are reduced mod p.
inline Matroid MakeLinear(long long prime,
                          const std::vector<std::vector<long long>>& matrix,
                          bool validate = false) {
  if (!internal::IsPrime(prime) || prime > (1LL << 31)) {
    throw Error(ErrorKind::kInvalidParameters,
                "field order must be a prime below 2^31, got " +
                    std::to_string(prime));
  }
  const int rows = static_cast<int>(matrix.size());
  const int n = rows == 0 ? 0 : static_cast<int>(matrix[0].size());
  std::vector<std::vector<long long>> reduced(rows);
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(matrix[i].size()) != n) {
      throw Error(ErrorKind::kInvalidParameters, "ragged matrix rows");
    }
    reduced[i].resize(n);
    for (int j = 0; j < n; ++j) {
      reduced[i][j] = ((matrix[i][j] % prime) + prime) % prime;
    }
  }
  Matroid m = Matroid::FromOracle(
      n,
      [prime, rows, reduced](Subset a) {
        std::vector<int> cols = Elements(a);
        std::vector<std::vector<long long>> sub(
            rows, std::vector<long long>(cols.size()));
        for (int i = 0; i < rows; ++i) {
          for (std::size_t j = 0; j < cols.size(); ++j) {
            sub[i][j] = reduced[i][cols[j]];
          }
        }
        int rank = 0;
        for (std::size_t col = 0; col < cols.size() && rank < rows; ++col) {
          int pivot = -1;
          for (int i = rank; i < rows; ++i) {
            if (sub[i][col] != 0) {
              pivot = i;
              break;
            }
          }
          if (pivot < 0) continue;
          std::swap(sub[pivot], sub[rank]);
          const long long inv = internal::ModInverse(sub[rank][col], prime);
          for (int i = rank + 1; i < rows; ++i) {
            const long long f = sub[i][col] * inv % prime;
            if (f == 0) continue;
            for (std::size_t j = col; j < cols.size(); ++j) {
              sub[i][j] = ((sub[i][j] - f * sub[rank][j]) % prime + prime) %
                          prime;
            }
          }
          ++rank;
        }
        return rank;
      },
      Provenance::kLinear);
  if (validate) RequireValid(m);
  return m;
}

// Explicit rank table indexed by bitmask; always validated.
inline Matroid MakeRankTable(int n, const std::vector<int>& ranks) {
  if (n < 0 || n > kMaxGroundSet) {
    throw Error(ErrorKind::kInvalidParameters, "ground set size out of range");
  }
  RequireEnumerable(n, "rank table input");
  if (ranks.size() != (std::size_t{1} << n)) {
    throw Error(ErrorKind::kInvalidParameters,
                "rank table must have 2^n = " +
                    std::to_string(std::size_t{1} << n) + " entries, got " +
                    std::to_string(ranks.size()));
  }
  if (auto v = ValidateRankAxioms(
          n, [&ranks](Subset a) { return ranks[a]; })) {
    throw Error(ErrorKind::kNotAMatroid, v->Describe());
  }
  std::vector<std::uint8_t> table(ranks.begin(), ranks.end());
  return Matroid::FromTable(n, std::move(table), Provenance::kRankTable);
}

// A minor together with its relabeling: original_index[j] is the 0-based
// element of the parent matroid that became element j of the minor.
struct Minor {
  Matroid matroid;
  std::vector<int> original_index;
};

namespace internal {

// Spreads the bits of `packed` onto the positions listed in `targets`.
inline Subset Expand(Subset packed, const std::vector<int>& targets) {
  Subset out = 0;
  for (std::size_t j = 0; j < targets.size(); ++j) {
    if (Contains(packed, static_cast<int>(j))) out |= Singleton(targets[j]);
  }
  return out;
}

}  // namespace internal

// M/S on the complement of S, relabeled densely in increasing order:
// rank'(A) = rank(A u S) - rank(S).
inline Minor Contract(const Matroid& m, Subset s) {
  if ((s & ~FullSet(m.size())) != 0) {
    throw Error(ErrorKind::kInvalidParameters,
                "contraction set is not inside the ground set");
  }
  std::vector<int> keep = Elements(FullSet(m.size()) & ~s);
  const int rank_s = m.Rank(s);
  Matroid minor = Matroid::FromOracle(
      static_cast<int>(keep.size()),
      [m, s, keep, rank_s](Subset a) {
        return m.Rank(internal::Expand(a, keep) | s) - rank_s;
      },
      Provenance::kMinor);
  return {std::move(minor), std::move(keep)};
}

// M|T: the restriction (deletion of the complement of T), relabeled densely.
inline Minor Restrict(const Matroid& m, Subset t) {
  if ((t & ~FullSet(m.size())) != 0) {
    throw Error(ErrorKind::kInvalidParameters,
                "restriction set is not inside the ground set");
  }
  std::vector<int> keep = Elements(t);
  Matroid minor = Matroid::FromOracle(
      static_cast<int>(keep.size()),
      [m, keep](Subset a) { return m.Rank(internal::Expand(a, keep)); },
      Provenance::kMinor);
  return {std::move(minor), std::move(keep)};
}

inline Minor Delete(const Matroid& m, Subset s) {
  return Restrict(m, FullSet(m.size()) & ~s);
}

// Loops and parallel classes. Classes are listed by their smallest element.
struct StructureReport {
  Subset loops = 0;
  std::vector<Subset> parallel_classes;

  int rank_one_flats() const {
    return static_cast<int>(parallel_classes.size());
  }
};

inline StructureReport Structure(const Matroid& m) {
  StructureReport report;
  const int n = m.size();
  std::vector<bool> assigned(n, false);
  for (int e = 0; e < n; ++e) {
    if (m.Rank(Singleton(e)) == 0) {
      report.loops |= Singleton(e);
      assigned[e] = true;
    }
  }
  for (int e = 0; e < n; ++e) {
    if (assigned[e]) continue;
    Subset cls = Singleton(e);
    assigned[e] = true;
    for (int f = e + 1; f < n; ++f) {
      if (!assigned[f] && m.Rank(Singleton(e) | Singleton(f)) == 1) {
        cls |= Singleton(f);
        assigned[f] = true;
      }
    }
    report.parallel_classes.push_back(cls);
  }
  return report;
}

struct Simplification {
  Matroid matroid;
  // representative[j]: element of the original matroid standing for
  // parallel class j.
  std::vector<int> representative;
  bool degenerate = false;
};

// Deletes loops and keeps the smallest element of each parallel class. A
// matroid of loops only has no rank-one flats; the result is then the empty
// matroid with `degenerate` set.
inline Simplification Simplify(const Matroid& m) {
  StructureReport s = Structure(m);
  Subset reps = 0;
  for (Subset cls : s.parallel_classes) reps |= cls & (~cls + 1);
  Minor minor = Restrict(m, reps);
  Matroid simple = Matroid::FromOracle(
      minor.matroid.size(),
      [inner = minor.matroid](Subset a) { return inner.Rank(a); },
      Provenance::kSimplification);
  return {std::move(simple), std::move(minor.original_index),
          s.parallel_classes.empty()};
}

// I_k = number of k-element independent sets, k = 0..n.
inline std::vector<std::uint64_t> IndependentSetCounts(const Matroid& m) {
  const int n = m.size();
  RequireEnumerable(n, "independent set enumeration");
  std::vector<std::uint64_t> counts(n + 1, 0);
  const Subset full = FullSet(n);
  for (Subset a = 0;; ++a) {
    if (m.IsIndependent(a)) ++counts[Cardinality(a)];
    if (a == full) break;
  }
  return counts;
}

}  // namespace potts_hodge

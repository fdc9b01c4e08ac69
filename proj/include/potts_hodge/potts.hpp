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

// Evaluation of the homogeneous multivariate Tutte polynomial
//
//   Z_{M,c}(q, w) = sum_{A subset [n]} c_{|A|} q^{-rk(A)} w_0^{n-|A|} prod_{i in A} w_i
//
// its strata Z^k_M, partial derivatives, and Hessians, all by exhaustive
// subset enumeration. Variable 0 is the grading variable w_0; variable i >= 1
// belongs to ground-set element i (bit i - 1 of a Subset).

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "potts_hodge/error.hpp"
#include "potts_hodge/matroid.hpp"
#include "potts_hodge/scalar.hpp"
#include "potts_hodge/sym_matrix.hpp"

namespace potts_hodge {

// Positive coefficient sequence (c_0, ..., c_n).
template <Scalar T>
class CoeffSeq {
 public:
  explicit CoeffSeq(std::vector<T> values) : values_(std::move(values)) {
    if (values_.empty()) {
      throw Error(ErrorKind::kInvalidParameters, "empty coefficient sequence");
    }
    for (const T& v : values_) {
      if (Sign(v) <= 0) {
        throw Error(ErrorKind::kInvalidParameters,
                    "coefficient sequence must be strictly positive");
      }
    }
    strictly_log_concave_ = true;
    for (std::size_t m = 1; m + 1 < values_.size(); ++m) {
      if (!(values_[m] * values_[m] > values_[m - 1] * values_[m + 1])) {
        strictly_log_concave_ = false;
        break;
      }
    }
  }

  static CoeffSeq Ones(int n) {
    return CoeffSeq(std::vector<T>(n + 1, FromInt<T>(1)));
  }

  const std::vector<T>& values() const { return values_; }
  int size() const { return static_cast<int>(values_.size()); }
  const T& operator[](int i) const { return values_[i]; }

  // c_m^2 > c_{m-1} c_{m+1} for every interior m.
  bool strictly_log_concave() const { return strictly_log_concave_; }

 private:
  std::vector<T> values_;
  bool strictly_log_concave_ = false;
};

// Orders of differentiation (alpha_0, alpha_1, ..., alpha_n).
struct MultiIndex {
  std::vector<int> orders;

  static MultiIndex Zero(int n) { return {std::vector<int>(n + 1, 0)}; }

  int size() const { return static_cast<int>(orders.size()); }
  int operator[](int i) const { return orders[i]; }

  int degree() const {
    int d = 0;
    for (int a : orders) d += a;
    return d;
  }

  // Ground-set elements i >= 1 differentiated at least once, as a Subset.
  Subset support() const {
    Subset s = 0;
    for (int i = 1; i < size(); ++i) {
      if (orders[i] > 0) s |= Singleton(i - 1);
    }
    return s;
  }

  MultiIndex Plus(int variable, int times = 1) const {
    MultiIndex out = *this;
    out.orders[variable] += times;
    return out;
  }
};

// Kept on the evaluation calls for the float path: kRankNormalized multiplies
// every value by q^{rk(M)} (a positive factor) so small q does not blow up.
enum class Scaling { kNone, kRankNormalized };

namespace internal {

template <Scalar T>
void RequirePositiveQ(const T& q) {
  if (Sign(q) <= 0) {
    throw Error(ErrorKind::kInvalidParameters, "q must be > 0");
  }
}

template <Scalar T>
void RequireLength(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw Error(ErrorKind::kInvalidParameters,
                std::string(what) + " has length " + std::to_string(got) +
                    ", expected " + std::to_string(want));
  }
}

// weight[r] = q^{-r}, or q^{rk(M) - r} when rank-normalized.
template <Scalar T>
std::vector<T> RankWeights(const Matroid& m, const T& q, Scaling scaling) {
  RequirePositiveQ(q);
  const int top = m.Rank();
  std::vector<T> weight(top + 1);
  const T inv = FromInt<T>(1) / q;
  if (scaling == Scaling::kNone) {
    weight[0] = FromInt<T>(1);
    for (int r = 1; r <= top; ++r) weight[r] = weight[r - 1] * inv;
  } else {
    weight[top] = FromInt<T>(1);
    for (int r = top - 1; r >= 0; --r) weight[r] = weight[r + 1] * q;
  }
  return weight;
}

// products[B] = prod_{i in B} values[i], for every B subset of [values.size()].
template <Scalar T>
std::vector<T> SubsetProducts(const std::vector<T>& values) {
  const int n = static_cast<int>(values.size());
  std::vector<T> products(std::size_t{1} << n);
  products[0] = FromInt<T>(1);
  for (Subset b = 1; b < products.size(); ++b) {
    products[b] = products[b & (b - 1)] * values[std::countr_zero(b)];
  }
  return products;
}

// k (k-1) ... (k-b+1); zero when b > k.
template <Scalar T>
T FallingFactorial(int k, int b) {
  if (b > k) return FromInt<T>(0);
  T out = FromInt<T>(1);
  for (int i = 0; i < b; ++i) out *= FromInt<T>(k - i);
  return out;
}

// Given stratum sums g[s] = sum over |A| = s of the surviving monomial part,
// attaches c_{s} and the w_0 derivative:
//   sum_s c_s * (n-s)!/(n-s-b0)! * w0^{n-s-b0} * g[s].
template <Scalar T>
T CombineStrata(const std::vector<T>& g, const CoeffSeq<T>& c, int n, int b0,
                const std::vector<T>& w0_powers) {
  T total = FromInt<T>(0);
  for (int s = 0; s <= n; ++s) {
    const int k = n - s;
    if (k < b0 || Sign(g[s]) == 0) continue;
    total += c[s] * FallingFactorial<T>(k, b0) * w0_powers[k - b0] * g[s];
  }
  return total;
}

template <Scalar T>
std::vector<T> Powers(const T& x, int top) {
  std::vector<T> out(top + 1);
  out[0] = FromInt<T>(1);
  for (int i = 1; i <= top; ++i) out[i] = out[i - 1] * x;
  return out;
}

template <Scalar T>
void CheckDerivativeInputs(const Matroid& m, const CoeffSeq<T>& c,
                           const MultiIndex& alpha, const std::vector<T>& w) {
  const std::size_t dim = static_cast<std::size_t>(m.size()) + 1;
  RequireLength<T>(c.values().size(), dim, "coefficient sequence");
  RequireLength<T>(alpha.orders.size(), dim, "multi-index");
  RequireLength<T>(w.size(), dim, "evaluation point");
  for (int a : alpha.orders) {
    if (a < 0) {
      throw Error(ErrorKind::kInvalidParameters,
                  "multi-index entries must be nonnegative");
    }
  }
}

}  // namespace internal

// Z^k_M(q, w) for w = (w_1..w_n). k > n gives 0.
template <Scalar T>
T ZkEval(const Matroid& m, int k, const T& q, const std::vector<T>& w,
         Scaling scaling = Scaling::kNone) {
  const int n = m.size();
  internal::RequireLength<T>(w.size(), n, "weight vector");
  std::vector<T> weight = internal::RankWeights(m, q, scaling);
  if (k < 0) {
    throw Error(ErrorKind::kInvalidParameters, "k must be nonnegative");
  }
  if (k > n) return FromInt<T>(0);
  RequireEnumerable(n, "Z^k evaluation");
  T total = FromInt<T>(0);
  const Subset full = FullSet(n);
  for (Subset a = 0;; ++a) {
    if (Cardinality(a) == k) {
      T term = weight[m.Rank(a)];
      for (int i : Elements(a)) term *= w[i];
      total += term;
    }
    if (a == full) break;
  }
  return total;
}

// All strata (Z^0, ..., Z^n) in one pass over the subsets.
template <Scalar T>
std::vector<T> ZkAll(const Matroid& m, const T& q, const std::vector<T>& w,
                     Scaling scaling = Scaling::kNone) {
  const int n = m.size();
  internal::RequireLength<T>(w.size(), n, "weight vector");
  RequireEnumerable(n, "Z^k evaluation");
  std::vector<T> weight = internal::RankWeights(m, q, scaling);
  std::vector<T> products = internal::SubsetProducts(w);
  std::vector<T> strata(n + 1, FromInt<T>(0));
  for (Subset a = 0; a < products.size(); ++a) {
    strata[Cardinality(a)] += weight[m.Rank(a)] * products[a];
  }
  return strata;
}

// Z_{M,c}(q, w) for w = (w_0, w_1, ..., w_n). With c all ones this is the
// homogeneous multivariate Tutte polynomial Z_M.
template <Scalar T>
T ZWeightedEval(const Matroid& m, const CoeffSeq<T>& c, const T& q,
                const std::vector<T>& w, Scaling scaling = Scaling::kNone) {
  const int n = m.size();
  internal::RequireLength<T>(c.values().size(), n + 1, "coefficient sequence");
  internal::RequireLength<T>(w.size(), n + 1, "evaluation point");
  std::vector<T> rest(w.begin() + 1, w.end());
  std::vector<T> strata = ZkAll(m, q, rest, scaling);
  std::vector<T> w0_powers = internal::Powers(w[0], n);
  T total = FromInt<T>(0);
  for (int k = 0; k <= n; ++k) {
    total += c[n - k] * strata[n - k] * w0_powers[k];
  }
  return total;
}

// True iff every monomial of Z_{M,c} is annihilated by the derivative. With c
// strictly positive and q > 0 every subset carries a nonzero coefficient, so
// the derivative survives iff alpha_i <= 1 for i >= 1 and the subset A equal
// to the support can still feed alpha_0 derivatives of w_0.
template <Scalar T>
bool IsIdenticallyZero(const Matroid& m, const CoeffSeq<T>& c, const T& q,
                       const MultiIndex& alpha) {
  const int n = m.size();
  internal::RequirePositiveQ(q);
  internal::RequireLength<T>(c.values().size(), n + 1, "coefficient sequence");
  internal::RequireLength<T>(alpha.orders.size(), n + 1, "multi-index");
  for (int i = 1; i <= n; ++i) {
    if (alpha[i] >= 2) return true;
  }
  return alpha[0] + Cardinality(alpha.support()) > n;
}

// Degree of d^alpha Z_{M,c}, or nullopt when it vanishes identically.
inline std::optional<int> DerivativeDegree(int n, const MultiIndex& alpha) {
  for (int i = 1; i < alpha.size(); ++i) {
    if (alpha[i] >= 2) return std::nullopt;
  }
  const int d = n - alpha[0] - Cardinality(alpha.support());
  if (d < 0) return std::nullopt;
  return d;
}

// d^alpha Z_{M,c} at w. A monomial c_{|A|} q^{-rk(A)} w_0^k w^A (k = n - |A|)
// survives iff alpha_0 <= k and the support of alpha lies in A, in which case
// it contributes k!/(k - alpha_0)! w_0^{k - alpha_0} w^{A \ support}.
template <Scalar T>
T PartialEval(const Matroid& m, const CoeffSeq<T>& c, const T& q,
              const MultiIndex& alpha, const std::vector<T>& w,
              Scaling scaling = Scaling::kNone) {
  internal::CheckDerivativeInputs(m, c, alpha, w);
  const int n = m.size();
  RequireEnumerable(n, "derivative evaluation");
  std::vector<T> weight = internal::RankWeights(m, q, scaling);
  if (!DerivativeDegree(n, alpha)) return FromInt<T>(0);
  const Subset support = alpha.support();
  const Subset free = FullSet(n) & ~support;
  std::vector<T> rest(w.begin() + 1, w.end());
  std::vector<T> products = internal::SubsetProducts(rest);
  std::vector<T> strata(n + 1, FromInt<T>(0));
  // Walk B over subsets of the free elements; A = support | B.
  for (Subset b = 0;; b = (b - free) & free) {
    const Subset a = b | support;
    strata[Cardinality(a)] += weight[m.Rank(a)] * products[b];
    if (b == free) break;
  }
  return internal::CombineStrata(strata, c, n, alpha[0],
                                 internal::Powers(w[0], n));
}

// Hessian of d^alpha Z_{M,c} at w, all (n+1)^2 entries from one pass over the
// subsets containing the support of alpha.
template <Scalar T>
SymMatrix<T> Hessian(const Matroid& m, const CoeffSeq<T>& c, const T& q,
                     const MultiIndex& alpha, const std::vector<T>& w,
                     Scaling scaling = Scaling::kNone) {
  internal::CheckDerivativeInputs(m, c, alpha, w);
  const int n = m.size();
  RequireEnumerable(n, "Hessian evaluation");
  std::vector<T> weight = internal::RankWeights(m, q, scaling);
  SymMatrix<T> h(n + 1);
  if (!DerivativeDegree(n, alpha)) return h;

  const Subset support = alpha.support();
  const Subset free = FullSet(n) & ~support;
  std::vector<T> rest(w.begin() + 1, w.end());
  std::vector<T> products = internal::SubsetProducts(rest);
  const T zero = FromInt<T>(0);
  const int dim = n + 1;

  // sums[(i * dim + j) * (n + 1) + s]: stratum sums for entry (i, j).
  std::vector<T> sums(static_cast<std::size_t>(dim) * dim * (n + 1), zero);
  auto slot = [&](int i, int j, int s) -> T& {
    return sums[(static_cast<std::size_t>(i) * dim + j) * (n + 1) + s];
  };
  std::vector<int> members;
  for (Subset b = 0;; b = (b - free) & free) {
    const Subset a = b | support;
    const int s = Cardinality(a);
    const T& base = weight[m.Rank(a)];
    slot(0, 0, s) += base * products[b];
    members = Elements(b);
    for (std::size_t x = 0; x < members.size(); ++x) {
      const int i = members[x];
      const Subset without_i = b & ~Singleton(i);
      slot(0, i + 1, s) += base * products[without_i];
      for (std::size_t y = x + 1; y < members.size(); ++y) {
        const int j = members[y];
        slot(i + 1, j + 1, s) += base * products[without_i & ~Singleton(j)];
      }
    }
    if (b == free) break;
  }

  std::vector<T> w0_powers = internal::Powers(w[0], n);
  auto combine = [&](int i, int j, int b0) {
    std::vector<T> g(sums.begin() + (static_cast<std::size_t>(i) * dim + j) * (n + 1),
                     sums.begin() + (static_cast<std::size_t>(i) * dim + j + 1) * (n + 1));
    return internal::CombineStrata(g, c, n, b0, w0_powers);
  };
  h.Set(0, 0, combine(0, 0, alpha[0] + 2));
  for (int j = 1; j <= n; ++j) {
    if (Contains(support, j - 1)) continue;
    h.Set(0, j, combine(0, j, alpha[0] + 1));
    for (int i = 1; i < j; ++i) {
      if (Contains(support, i - 1)) continue;
      h.Set(i, j, combine(i, j, alpha[0]));
    }
  }
  return h;
}

// Gradient of d^alpha Z_{M,c} at w.
template <Scalar T>
std::vector<T> Gradient(const Matroid& m, const CoeffSeq<T>& c, const T& q,
                        const MultiIndex& alpha, const std::vector<T>& w,
                        Scaling scaling = Scaling::kNone) {
  std::vector<T> g;
  for (int i = 0; i <= m.size(); ++i) {
    g.push_back(PartialEval(m, c, q, alpha.Plus(i), w, scaling));
  }
  return g;
}

// f^m_M(w): sum over m-element independent sets of prod w_i.
template <Scalar T>
T FmEval(const Matroid& m, int size, const std::vector<T>& w) {
  const int n = m.size();
  internal::RequireLength<T>(w.size(), n, "weight vector");
  if (size < 0) {
    throw Error(ErrorKind::kInvalidParameters, "m must be nonnegative");
  }
  if (size > n) return FromInt<T>(0);
  RequireEnumerable(n, "independent set enumeration");
  T total = FromInt<T>(0);
  const Subset full = FullSet(n);
  for (Subset a = 0;; ++a) {
    if (Cardinality(a) == size && m.Rank(a) == size) {
      T term = FromInt<T>(1);
      for (int i : Elements(a)) term *= w[i];
      total += term;
    }
    if (a == full) break;
  }
  return total;
}

// |Z^m_M(q, q w) - f^m_M(w)|; each dependent A contributes q^{|A| - rk(A)}.
template <Scalar T>
T FLimitResidual(const Matroid& m, int size, const std::vector<T>& w,
                 const T& q) {
  if (Sign(q) <= 0 || q > FromInt<T>(1)) {
    throw Error(ErrorKind::kInvalidParameters, "q must lie in (0, 1]");
  }
  std::vector<T> scaled = w;
  for (T& x : scaled) x *= q;
  return Abs<T>(ZkEval(m, size, q, scaled) - FmEval(m, size, w));
}

// e_k over the variables indexed by `u`; w is indexed by element (0-based).
template <Scalar T>
T ElementarySymmetric(Subset u, int k, const std::vector<T>& w) {
  if (k < 0) return FromInt<T>(0);
  std::vector<T> e(k + 1, FromInt<T>(0));
  e[0] = FromInt<T>(1);
  for (int i : Elements(u)) {
    if (i >= static_cast<int>(w.size())) {
      throw Error(ErrorKind::kInvalidParameters,
                  "subset element outside the weight vector");
    }
    for (int j = k; j >= 1; --j) e[j] += e[j - 1] * w[i];
  }
  return e[k];
}

}  // namespace potts_hodge

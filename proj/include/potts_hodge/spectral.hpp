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

// Inertia of symmetric matrices and the one-positive-eigenvalue criteria.
//
// Exact inertia uses symmetric congruence reduction over the rationals
// (Sylvester's law of inertia); the float path uses a dense symmetric
// eigendecomposition and refuses to guess when an eigenvalue sits inside the
// zero threshold.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "potts_hodge/error.hpp"
#include "potts_hodge/matroid.hpp"
#include "potts_hodge/potts.hpp"
#include "potts_hodge/random.hpp"
#include "potts_hodge/scalar.hpp"
#include "potts_hodge/sym_matrix.hpp"

namespace potts_hodge {

struct EigenSignature {
  int positive = 0;
  int negative = 0;
  int zero = 0;

  int dim() const { return positive + negative + zero; }
  bool operator==(const EigenSignature&) const = default;

  std::string ToString() const {
    return "(" + std::to_string(positive) + "," + std::to_string(negative) +
           "," + std::to_string(zero) + ")";
  }
};

inline nlohmann::json SignatureToJson(const EigenSignature& s) {
  return nlohmann::json::array({s.positive, s.negative, s.zero});
}

// Exact inertia by congruence. A nonzero diagonal pivot contributes its
// sign; when the remaining diagonal is all zero but some a_ij != 0, the
// hyperbolic block [[0, b], [b, 0]] contributes one positive and one
// negative eigenvalue and is eliminated as a 2x2 pivot.
inline EigenSignature Signature(const SymMatrix<Rational>& matrix) {
  const int d = matrix.dim();
  std::vector<std::vector<Rational>> a = matrix.Rows();
  EigenSignature sig;
  auto swap_index = [&](int x, int y) {
    if (x == y) return;
    std::swap(a[x], a[y]);
    for (auto& row : a) std::swap(row[x], row[y]);
  };
  int k = 0;
  while (k < d) {
    int pivot = -1;
    for (int i = k; i < d; ++i) {
      if (sgn(a[i][i]) != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot >= 0) {
      swap_index(k, pivot);
      const Rational p = a[k][k];
      (sgn(p) > 0 ? sig.positive : sig.negative) += 1;
      for (int r = k + 1; r < d; ++r) {
        if (sgn(a[r][k]) == 0) continue;
        const Rational f = a[r][k] / p;
        for (int c = k + 1; c < d; ++c) {
          if (sgn(a[k][c]) != 0) a[r][c] -= f * a[k][c];
        }
      }
      ++k;
      continue;
    }
    int pi = -1, pj = -1;
    for (int i = k; i < d && pi < 0; ++i) {
      for (int j = i + 1; j < d; ++j) {
        if (sgn(a[i][j]) != 0) {
          pi = i;
          pj = j;
          break;
        }
      }
    }
    if (pi < 0) {
      sig.zero += d - k;
      break;
    }
    swap_index(k, pi);
    swap_index(k + 1, pj);
    const Rational b = a[k][k + 1];
    sig.positive += 1;
    sig.negative += 1;
    for (int r = k + 2; r < d; ++r) {
      for (int c = k + 2; c < d; ++c) {
        const Rational cross = a[r][k + 1] * a[k][c] + a[r][k] * a[k + 1][c];
        if (sgn(cross) != 0) a[r][c] -= cross / b;
      }
    }
    k += 2;
  }
  return sig;
}

inline std::vector<double> Eigenvalues(const SymMatrix<double>& a) {
  Eigen::MatrixXd m(a.dim(), a.dim());
  for (int i = 0; i < a.dim(); ++i) {
    for (int j = 0; j < a.dim(); ++j) m(i, j) = a(i, j);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      m, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

inline std::vector<double> Eigenvalues(const SymMatrix<Rational>& a) {
  SymMatrix<double> f(a.dim());
  for (int i = 0; i < a.dim(); ++i) {
    for (int j = i; j < a.dim(); ++j) f.Set(i, j, a(i, j).get_d());
  }
  return Eigenvalues(f);
}

struct FloatSignature {
  EigenSignature signature;
  std::vector<double> eigenvalues;
  double tolerance = 0.0;
  // False when some eigenvalue lies within the tolerance of zero.
  bool determinate = true;
};

inline constexpr double kDefaultRelativeTolerance = 1e-9;

// Float inertia with threshold tol = relative_tol * max|a_ij|.
inline FloatSignature SignatureFloat(
    const SymMatrix<double>& a,
    double relative_tol = kDefaultRelativeTolerance) {
  FloatSignature out;
  out.eigenvalues = Eigenvalues(a);
  out.tolerance = relative_tol * a.MaxAbs();
  for (double lambda : out.eigenvalues) {
    if (std::fabs(lambda) <= out.tolerance) {
      out.determinate = false;
      ++out.signature.zero;
    } else if (lambda > 0) {
      ++out.signature.positive;
    } else {
      ++out.signature.negative;
    }
  }
  return out;
}

// Float overload: an eigenvalue inside the zero threshold is reported as an
// indeterminate-signature error rather than guessed.
inline EigenSignature Signature(const SymMatrix<double>& a) {
  FloatSignature f = SignatureFloat(a);
  if (!f.determinate) {
    throw Error(ErrorKind::kIndeterminateSignature,
                "eigenvalue within " + std::to_string(f.tolerance) +
                    " of zero; use exact mode");
  }
  return f.signature;
}

template <Scalar T>
bool OnePositive(const SymMatrix<T>& a) {
  return Signature(a).positive == 1;
}

template <Scalar T>
struct HrDiscriminant {
  // (u^T A v)^2 - (u^T A u)(v^T A v)
  T value;
  bool u_positive = false;
};

template <Scalar T>
HrDiscriminant<T> HrDiscriminantOf(const SymMatrix<T>& a,
                                   const std::vector<T>& u,
                                   const std::vector<T>& v) {
  const T uav = Bilinear(u, a, v);
  const T uau = Bilinear(u, a, u);
  const T vav = Bilinear(v, a, v);
  return {uav * uav - uau * vav, Sign(uau) > 0};
}

// Exact rank of a rectangular rational matrix given by rows.
inline int MatrixRank(std::vector<std::vector<Rational>> rows) {
  if (rows.empty()) return 0;
  const int cols = static_cast<int>(rows[0].size());
  int rank = 0;
  for (int c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    int pivot = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r) {
      if (sgn(rows[r][c]) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(rows[pivot], rows[rank]);
    for (int r = rank + 1; r < static_cast<int>(rows.size()); ++r) {
      if (sgn(rows[r][c]) == 0) continue;
      const Rational f = rows[r][c] / rows[rank][c];
      for (int j = c; j < cols; ++j) rows[r][j] -= f * rows[rank][j];
    }
    ++rank;
  }
  return rank;
}

// Basis of the right nullspace via reduced row echelon form.
inline std::vector<std::vector<Rational>> Nullspace(
    std::vector<std::vector<Rational>> rows, int cols) {
  std::vector<int> pivot_col;
  int rank = 0;
  for (int c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    int pivot = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r) {
      if (sgn(rows[r][c]) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(rows[pivot], rows[rank]);
    const Rational p = rows[rank][c];
    for (int j = 0; j < cols; ++j) rows[rank][j] /= p;
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (r == rank || sgn(rows[r][c]) == 0) continue;
      const Rational f = rows[r][c];
      for (int j = 0; j < cols; ++j) rows[r][j] -= f * rows[rank][j];
    }
    pivot_col.push_back(c);
    ++rank;
  }
  std::vector<std::vector<Rational>> basis;
  for (int free = 0; free < cols; ++free) {
    if (std::find(pivot_col.begin(), pivot_col.end(), free) !=
        pivot_col.end()) {
      continue;
    }
    std::vector<Rational> v(cols, Rational(0));
    v[free] = 1;
    for (int r = 0; r < rank; ++r) v[pivot_col[r]] = -rows[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

// Outcome of comparing the three equivalent one-positive-eigenvalue
// statements on one matrix:
//   (1) exactly one positive eigenvalue (exact inertia);
//   (2) (u^T A v)^2 >= (u^T A u)(v^T A v) for every sampled pair with
//       u^T A u > 0;
//   (3) a sampled witness u with u^T A u > 0 satisfies the inequality
//       against every sampled v.
// Half the draws are small integer vectors; the other half are integer
// roundings near the positive eigenspace, since a thin positive cone is
// almost never hit by the first kind.
struct Lemma1Report {
  enum class Status { kOk, kNotApplicable, kSamplingFailure };
  Status status = Status::kOk;
  EigenSignature signature;
  bool statement1 = false;
  bool statement2 = true;
  bool statement3 = true;
  std::vector<Rational> witness_u;
  // A pair violating (2), when one was found.
  std::optional<std::pair<std::vector<Rational>, std::vector<Rational>>>
      violation2;
  // A v violating (3) against witness_u, when one was found.
  std::optional<std::vector<Rational>> violation3;
  int trials = 0;

  bool agree() const {
    return status == Status::kOk && statement1 == statement2 &&
           statement2 == statement3;
  }
};

inline constexpr int kVectorEntryBound = 9;
inline constexpr int kPositiveDirectionRetries = 1000;

// Unit eigenvectors of the (floating-point) positive eigenvalues.
inline std::vector<std::vector<double>> PositiveEigenvectors(
    const SymMatrix<Rational>& a) {
  Eigen::MatrixXd m(a.dim(), a.dim());
  for (int i = 0; i < a.dim(); ++i) {
    for (int j = 0; j < a.dim(); ++j) m(i, j) = a(i, j).get_d();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  std::vector<std::vector<double>> out;
  for (int k = 0; k < a.dim(); ++k) {
    if (solver.eigenvalues()(k) <= 0) continue;
    const Eigen::VectorXd col = solver.eigenvectors().col(k);
    out.emplace_back(col.data(), col.data() + col.size());
  }
  return out;
}

// round(s * sum_j g_j e_j) plus a +-1 jitter, with s a random power of ten
// and g_j uniform in [-1, 1].
inline std::vector<Rational> GuidedIntegerVector(
    Rng& rng, const std::vector<std::vector<double>>& directions) {
  const int d = static_cast<int>(directions.front().size());
  const double scale = std::pow(10.0, static_cast<double>(rng.Uniform(1, 4)));
  std::vector<double> x(d, 0.0);
  for (const auto& e : directions) {
    const double g = static_cast<double>(rng.Uniform(-1000, 1000)) / 1000;
    for (int i = 0; i < d; ++i) x[i] += g * e[i];
  }
  std::vector<Rational> out(d);
  for (int i = 0; i < d; ++i) {
    out[i] = Rational(std::lround(scale * x[i]) +
                      static_cast<long>(rng.Uniform(-1, 1)));
  }
  return out;
}

inline Lemma1Report Lemma1CrossCheck(const SymMatrix<Rational>& a, int trials,
                                     std::uint64_t seed) {
  Lemma1Report report;
  report.trials = trials;
  report.signature = Signature(a);
  report.statement1 = report.signature.positive == 1;
  if (report.signature.positive == 0) {
    report.status = Lemma1Report::Status::kNotApplicable;
    return report;
  }
  const int d = a.dim();
  const std::vector<std::vector<double>> guide = PositiveEigenvectors(a);
  auto draw = [&](Rng& rng) {
    if (!guide.empty() && rng.Bernoulli(1, 2)) {
      return GuidedIntegerVector(rng, guide);
    }
    return SmallIntegerVector(rng, d, -kVectorEntryBound, kVectorEntryBound);
  };
  // Draws a u with u^T A u > 0.
  auto positive_direction =
      [&](Rng& rng) -> std::optional<std::vector<Rational>> {
    for (int attempt = 0; attempt < kPositiveDirectionRetries; ++attempt) {
      auto u = draw(rng);
      if (sgn(Bilinear(u, a, u)) > 0) return u;
    }
    return std::nullopt;
  };

  Rng witness_rng(DeriveSeed(seed, {3, 0}));
  auto witness = positive_direction(witness_rng);
  if (!witness) {
    report.status = Lemma1Report::Status::kSamplingFailure;
    return report;
  }
  report.witness_u = *witness;

  for (int t = 0; t < trials; ++t) {
    Rng rng(DeriveSeed(seed, {2, static_cast<std::uint64_t>(t)}));
    auto u = positive_direction(rng);
    if (!u) {
      report.status = Lemma1Report::Status::kSamplingFailure;
      return report;
    }
    auto v = draw(rng);
    if (report.statement2 && sgn(HrDiscriminantOf(a, *u, v).value) < 0) {
      report.statement2 = false;
      report.violation2 = std::make_pair(*u, v);
    }
    Rng rng3(DeriveSeed(seed, {3, static_cast<std::uint64_t>(t) + 1}));
    auto v3 = draw(rng3);
    if (report.statement3 &&
        sgn(HrDiscriminantOf(a, report.witness_u, v3).value) < 0) {
      report.statement3 = false;
      report.violation3 = v3;
    }
  }
  return report;
}

// max_ij |(d - 2) H_F - sum_i w_i H_{d_i F}| for F = d^alpha Z_{M,c}, which
// Euler's formula for the degree-(d-1) derivatives makes vanish identically.
template <Scalar T>
T EulerHessianResidual(const Matroid& m, const CoeffSeq<T>& c, const T& q,
                       const MultiIndex& alpha, const std::vector<T>& w,
                       Scaling scaling = Scaling::kNone) {
  auto degree = DerivativeDegree(m.size(), alpha);
  if (!degree || *degree < 2) {
    throw Error(ErrorKind::kNotApplicable,
                "Euler Hessian identity needs a derivative of degree >= 2");
  }
  SymMatrix<T> diff = Hessian(m, c, q, alpha, w, scaling);
  diff *= FromInt<T>(*degree - 2);
  for (int i = 0; i <= m.size(); ++i) {
    SymMatrix<T> hi = Hessian(m, c, q, alpha.Plus(i), w, scaling);
    hi *= -w[i];
    diff += hi;
  }
  return diff.MaxAbs();
}

struct KernelIdentityReport {
  enum class Status { kOk, kHypothesisFailed };
  Status status = Status::kOk;
  // First variable whose derivative Hessian lacks exactly one positive
  // eigenvalue, and that Hessian's inertia.
  int failing_variable = -1;
  EigenSignature failing_signature;
  int dim = 0;
  int rank_hessian = 0;
  int rank_stacked = 0;
  int rank_joint = 0;
  std::vector<std::vector<Rational>> kernel_basis;

  int kernel_dim() const { return dim - rank_hessian; }
  int intersection_dim() const { return dim - rank_stacked; }
  // ker H_F = intersection of ker H_{d_i F} iff both row spaces coincide,
  // i.e. all three ranks agree.
  bool equal() const {
    return rank_hessian == rank_stacked && rank_stacked == rank_joint;
  }
};

// Compares ker H_F(w) with the intersection of ker H_{d_i F}(w), i = 0..n,
// after verifying each H_{d_i F}(w) has exactly one positive eigenvalue.
inline KernelIdentityReport KernelIdentityCheck(const Matroid& m,
                                                const CoeffSeq<Rational>& c,
                                                const Rational& q,
                                                const MultiIndex& alpha,
                                                const std::vector<Rational>& w) {
  KernelIdentityReport report;
  const int n = m.size();
  report.dim = n + 1;
  SymMatrix<Rational> h = Hessian(m, c, q, alpha, w);
  std::vector<std::vector<Rational>> stacked;
  for (int i = 0; i <= n; ++i) {
    SymMatrix<Rational> hi = Hessian(m, c, q, alpha.Plus(i), w);
    EigenSignature s = Signature(hi);
    if (s.positive != 1 &&
        report.status == KernelIdentityReport::Status::kOk) {
      report.status = KernelIdentityReport::Status::kHypothesisFailed;
      report.failing_variable = i;
      report.failing_signature = s;
    }
    for (auto& row : hi.Rows()) stacked.push_back(std::move(row));
  }
  std::vector<std::vector<Rational>> rows_h = h.Rows();
  report.rank_hessian = MatrixRank(rows_h);
  report.rank_stacked = MatrixRank(stacked);
  std::vector<std::vector<Rational>> joint = stacked;
  joint.insert(joint.end(), rows_h.begin(), rows_h.end());
  report.rank_joint = MatrixRank(std::move(joint));
  report.kernel_basis = Nullspace(rows_h, n + 1);
  return report;
}

}  // namespace potts_hodge

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

// Verification campaigns. Every check is a pure function of a matroid and
// a JSON `inputs` object, so a report can be parsed back and re-run check by
// check. All checks use exact rational arithmetic.

#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "potts_hodge/corpus.hpp"
#include "potts_hodge/error.hpp"
#include "potts_hodge/matroid.hpp"
#include "potts_hodge/matroid_io.hpp"
#include "potts_hodge/potts.hpp"
#include "potts_hodge/random.hpp"
#include "potts_hodge/scalar.hpp"
#include "potts_hodge/spectral.hpp"

namespace potts_hodge {

enum class Verdict { kPass, kFail, kVacuous, kNotApplicable };

inline const char* VerdictName(Verdict v) {
  switch (v) {
    case Verdict::kPass:
      return "pass";
    case Verdict::kFail:
      return "fail";
    case Verdict::kVacuous:
      return "vacuous";
    case Verdict::kNotApplicable:
      return "not-applicable";
  }
  return "?";
}

inline Verdict ParseVerdict(std::string_view s) {
  for (Verdict v : {Verdict::kPass, Verdict::kFail, Verdict::kVacuous,
                    Verdict::kNotApplicable}) {
    if (s == VerdictName(v)) return v;
  }
  throw Error(ErrorKind::kParseError, "unknown verdict '" + std::string(s) + "'");
}

inline const std::vector<std::string>& TheoremNames() {
  static const std::vector<std::string> names = {
      "qHR", "cqHR", "deg2", "ulc", "mason", "simplification", "logconcavity"};
  return names;
}

struct Check {
  std::string theorem;
  nlohmann::json inputs = nlohmann::json::object();
  Verdict verdict = Verdict::kPass;
  nlohmann::json witness = nlohmann::json::object();
};

namespace internal {

inline nlohmann::json RatJ(const Rational& r) { return FormatRational(r); }

inline nlohmann::json RatVecJ(const std::vector<Rational>& v) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& x : v) out.push_back(RatJ(x));
  return out;
}

inline std::vector<Rational> RatVecFrom(const nlohmann::json& j) {
  if (!j.is_array()) {
    throw Error(ErrorKind::kParseError, "expected an array of rationals");
  }
  std::vector<Rational> out;
  for (const auto& x : j) out.push_back(RationalFromJson(x));
  return out;
}

inline Rational Bin(int n, int k) { return FromUnsigned(Binomial(n, k)); }

inline void RequireUnitQ(const Rational& q) {
  if (sgn(q) <= 0 || q > 1) {
    throw Error(ErrorKind::kInvalidParameters, "q must lie in (0, 1]");
  }
}

inline void RequireWeights(const std::vector<Rational>& w, std::size_t len,
                           bool strict) {
  if (w.size() != len) {
    throw Error(ErrorKind::kInvalidParameters,
                "weight vector has length " + std::to_string(w.size()) +
                    ", expected " + std::to_string(len));
  }
  for (const auto& x : w) {
    if (strict ? sgn(x) <= 0 : sgn(x) < 0) {
      throw Error(ErrorKind::kInvalidParameters,
                  strict ? "weights must be positive"
                         : "weights must be nonnegative");
    }
  }
}

// Errors that mean "the check itself found something wrong" become a fail
// verdict with the error as witness; input errors propagate.
template <class Body>
Check Evaluate(std::string theorem, nlohmann::json inputs, Body&& body) {
  Check out{std::move(theorem), std::move(inputs)};
  try {
    body(out);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kImpossibleState &&
        e.kind() != ErrorKind::kIndeterminateSignature) {
      throw;
    }
    out.verdict = Verdict::kFail;
    out.witness = {{"error", ErrorKindName(e.kind())}, {"message", e.what()}};
  }
  return out;
}

// lhs >= rhs with vacuous-case and equality annotation.
inline void InequalityVerdict(Check& out, const Rational& lhs,
                              const Rational& rhs) {
  out.witness["lhs"] = RatJ(lhs);
  out.witness["rhs"] = RatJ(rhs);
  out.witness["slack"] = RatJ(lhs - rhs);
  out.witness["equality"] = lhs == rhs;
  if (lhs < rhs) {
    out.verdict = Verdict::kFail;
  } else if (sgn(rhs) == 0) {
    out.verdict = Verdict::kVacuous;
    out.witness["annotation"] = "zero right-hand side";
  } else {
    out.verdict = Verdict::kPass;
  }
}

}  // namespace internal

// ---------------------------------------------------------------------------
// Individual checks.

// Hessian of Z_M (c = 1, no derivative) has exactly one positive eigenvalue.
inline Check CheckTheorem1(const Matroid& m, int index, const Rational& q,
                           const std::vector<Rational>& w) {
  using internal::RatJ;
  const int n = m.size();
  internal::RequireUnitQ(q);
  internal::RequireWeights(w, n + 1, true);
  return internal::Evaluate(
      "qHR",
      {{"matroid", index}, {"q", RatJ(q)}, {"w", internal::RatVecJ(w)}},
      [&](Check& out) {
        if (n < 2) {
          out.verdict = Verdict::kNotApplicable;
          out.witness["reason"] = "ground set smaller than 2";
          return;
        }
        EigenSignature s = Signature(
            Hessian(m, CoeffSeq<Rational>::Ones(n), q, MultiIndex::Zero(n), w));
        out.verdict = s.positive == 1 ? Verdict::kPass : Verdict::kFail;
        out.witness["signature"] = SignatureToJson(s);
        out.witness["singular"] = s.zero > 0;
      });
}

// Variables the derivative still depends on: w_0 and every w_i not
// differentiated (the polynomial is affine in each w_i).
inline std::vector<int> ActiveVariables(const MultiIndex& alpha) {
  std::vector<int> active = {0};
  for (int i = 1; i < alpha.size(); ++i) {
    if (alpha[i] == 0) active.push_back(i);
  }
  return active;
}

// Hessian of d^alpha Z_{M,c} on its active variables is nonsingular with
// exactly one positive eigenvalue.
inline Check CheckTheorem2(const Matroid& m, int index,
                           const CoeffSeq<Rational>& c, const Rational& q,
                           const MultiIndex& alpha,
                           const std::vector<Rational>& w) {
  using internal::RatJ;
  const int n = m.size();
  internal::RequireUnitQ(q);
  internal::RequireWeights(w, n + 1, true);
  if (!c.strictly_log_concave() || c.size() != n + 1) {
    throw Error(ErrorKind::kInvalidParameters,
                "coefficients must be a strictly log-concave sequence of "
                "length n + 1");
  }
  return internal::Evaluate(
      "cqHR",
      {{"matroid", index},
       {"c", internal::RatVecJ(c.values())},
       {"q", RatJ(q)},
       {"alpha", alpha.orders},
       {"w", internal::RatVecJ(w)}},
      [&](Check& out) {
        std::optional<int> degree = DerivativeDegree(n, alpha);
        if (IsIdenticallyZero(m, c, q, alpha) || !degree) {
          out.verdict = Verdict::kNotApplicable;
          out.witness["reason"] = "derivative is identically zero";
          return;
        }
        if (*degree < 2) {
          out.verdict = Verdict::kNotApplicable;
          out.witness["reason"] = "derivative has degree below 2";
          return;
        }
        std::vector<int> active = ActiveVariables(alpha);
        EigenSignature s =
            Signature(Hessian(m, c, q, alpha, w).Principal(active));
        const int dim = static_cast<int>(active.size());
        out.verdict = s == EigenSignature{1, dim - 1, 0} ? Verdict::kPass
                                                         : Verdict::kFail;
        out.witness["signature"] = SignatureToJson(s);
        out.witness["active"] = active;
        out.witness["degree"] = *degree;
      });
}

// Decomposition of Z^2 after rescaling non-loops by q.
inline Check CheckDegreeTwoIdentity(const Matroid& m, int index,
                                    const Rational& q,
                                    const std::vector<Rational>& w) {
  using internal::RatJ;
  const int n = m.size();
  internal::RequireUnitQ(q);
  if (static_cast<int>(w.size()) != n) {
    throw Error(ErrorKind::kInvalidParameters, "weight vector length != n");
  }
  return internal::Evaluate(
      "deg2",
      {{"matroid", index},
       {"part", "b"},
       {"q", RatJ(q)},
       {"w", internal::RatVecJ(w)}},
      [&](Check& out) {
        StructureReport st = Structure(m);
        std::vector<Rational> scaled = w;
        for (int j = 0; j < n; ++j) {
          if (!Contains(st.loops, j)) scaled[j] *= q;
        }
        const Subset full = FullSet(n);
        Rational z1 = ZkEval(m, 1, q, scaled);
        Rational z2 = ZkEval(m, 2, q, scaled);
        Rational classes = 0;
        for (Subset cls : st.parallel_classes) {
          classes += ElementarySymmetric(cls, 2, w);
        }
        Rational rhs = ElementarySymmetric(full, 2, w) - (1 - q) * classes;
        Rational r1 = z1 - ElementarySymmetric(full, 1, w);
        Rational r2 = z2 - rhs;
        out.verdict = sgn(r1) == 0 && sgn(r2) == 0 ? Verdict::kPass
                                                    : Verdict::kFail;
        out.witness["residual_z1"] = RatJ(r1);
        out.witness["residual_z2"] = RatJ(r2);
        out.witness["loops"] = Cardinality(st.loops);
        out.witness["parallel_classes"] = st.rank_one_flats();
      });
}

// Z^1(w)^2 > 2t n/(n-1) Z^2(w) with t = c_0 c_2 / c_1^2, its t = 1 weak
// form, the Z^1 = 0 branch, and Cauchy-Schwarz at q = 1. Any real w != 0.
inline Check CheckDegreeTwoInequality(const Matroid& m, int index,
                                      const CoeffSeq<Rational>& c,
                                      const Rational& q,
                                      const std::vector<Rational>& w) {
  using internal::RatJ;
  const int n = m.size();
  internal::RequireUnitQ(q);
  if (static_cast<int>(w.size()) != n) {
    throw Error(ErrorKind::kInvalidParameters, "weight vector length != n");
  }
  if (std::all_of(w.begin(), w.end(),
                  [](const Rational& x) { return sgn(x) == 0; })) {
    throw Error(ErrorKind::kInvalidParameters, "w must be nonzero");
  }
  if (c.size() < 3) {
    throw Error(ErrorKind::kInvalidParameters, "need c_0, c_1, c_2");
  }
  const Rational t = c[0] * c[2] / (c[1] * c[1]);
  if (t >= 1) {
    throw Error(ErrorKind::kInvalidParameters,
                "c_0 c_2 / c_1^2 must be below 1");
  }
  return internal::Evaluate(
      "deg2",
      {{"matroid", index},
       {"part", "a"},
       {"c", internal::RatVecJ(c.values())},
       {"q", RatJ(q)},
       {"w", internal::RatVecJ(w)}},
      [&](Check& out) {
        if (n < 2) {
          out.verdict = Verdict::kNotApplicable;
          out.witness["reason"] = "ground set smaller than 2";
          return;
        }
        const Rational z1 = ZkEval(m, 1, q, w);
        const Rational z2 = ZkEval(m, 2, q, w);
        const Rational factor = Rational(2 * n, n - 1);
        const Rational lhs = z1 * z1;
        bool ok = lhs > t * factor * z2;
        bool weak = lhs >= factor * z2;
        ok = ok && weak;
        out.witness["t"] = RatJ(t);
        out.witness["z1"] = RatJ(z1);
        out.witness["z2"] = RatJ(z2);
        out.witness["strict"] = lhs > t * factor * z2;
        out.witness["weak"] = weak;
        if (sgn(z1) == 0) {
          out.witness["z1_zero_branch"] = true;
          ok = ok && sgn(z2) < 0;
        }
        if (q == 1) {
          Rational sum = 0, squares = 0;
          for (const auto& x : w) sum += x, squares += x * x;
          bool cs = sum * sum <= n * squares;
          out.witness["cauchy_schwarz"] = cs;
          ok = ok && cs;
        }
        out.verdict = ok ? Verdict::kPass : Verdict::kFail;
      });
}

// Ultra log-concavity of (Z^k) at w >= 0 for one interior index m.
inline Check CheckUlc(const Matroid& m, int index, const Rational& q,
                      const std::vector<Rational>& w, int mm) {
  using internal::Bin;
  const int n = m.size();
  internal::RequireUnitQ(q);
  internal::RequireWeights(w, n, false);
  if (mm <= 0 || mm >= n) {
    throw Error(ErrorKind::kInvalidParameters, "need 0 < m < n");
  }
  return internal::Evaluate(
      "ulc",
      {{"matroid", index},
       {"q", internal::RatJ(q)},
       {"w", internal::RatVecJ(w)},
       {"m", mm}},
      [&](Check& out) {
        Rational lo = ZkEval(m, mm - 1, q, w);
        Rational mid = ZkEval(m, mm, q, w);
        Rational hi = ZkEval(m, mm + 1, q, w);
        internal::InequalityVerdict(out, mid * mid * Bin(n, mm + 1) * Bin(n, mm - 1),
                                    hi * lo * Bin(n, mm) * Bin(n, mm));
      });
}

// Strongest Mason inequality on independent-set counts at index k, through
// two enumeration paths, with the all-(k+1)-subsets-independent criterion.
inline Check CheckMasonCounts(const Matroid& m, int index, int k) {
  const int n = m.size();
  if (k <= 0 || k >= n) {
    throw Error(ErrorKind::kInvalidParameters, "need 0 < k < n");
  }
  return internal::Evaluate(
      "mason", {{"matroid", index}, {"form", "counts"}, {"k", k}},
      [&](Check& out) {
        std::vector<std::uint64_t> counts = IndependentSetCounts(m);
        std::vector<Rational> ones(n, Rational(1));
        bool paths_agree = true;
        for (int j = k - 1; j <= k + 1; ++j) {
          paths_agree =
              paths_agree && FmEval(m, j, ones) == FromUnsigned(counts[j]);
        }
        const Rational lo = FromUnsigned(counts[k - 1]);
        const Rational mid = FromUnsigned(counts[k]);
        const Rational hi = FromUnsigned(counts[k + 1]);
        internal::InequalityVerdict(out, mid * mid * k * (n - k),
                                    Rational((k + 1) * (n - k + 1)) * lo * hi);
        const bool all_independent = counts[k + 1] == Binomial(n, k + 1);
        out.witness["counts"] = {counts[k - 1], counts[k], counts[k + 1]};
        out.witness["all_subsets_independent"] = all_independent;
        out.witness["paths_agree"] = paths_agree;
        if (!paths_agree) out.verdict = Verdict::kFail;
        // The claimed equality case: all (k+1)-subsets independent.
        if (all_independent && !out.witness["equality"].get<bool>()) {
          out.verdict = Verdict::kFail;
        }
      });
}

// Ratio form of the Mason inequality for f^k at w >= 0.
inline Check CheckMasonRatio(const Matroid& m, int index, int k,
                             const std::vector<Rational>& w) {
  using internal::Bin;
  const int n = m.size();
  internal::RequireWeights(w, n, false);
  if (k <= 0 || k >= n) {
    throw Error(ErrorKind::kInvalidParameters, "need 0 < k < n");
  }
  return internal::Evaluate(
      "mason",
      {{"matroid", index}, {"form", "ratio"}, {"k", k},
       {"w", internal::RatVecJ(w)}},
      [&](Check& out) {
        Rational lo = FmEval(m, k - 1, w);
        Rational mid = FmEval(m, k, w);
        Rational hi = FmEval(m, k + 1, w);
        internal::InequalityVerdict(out, mid * mid * Bin(n, k + 1) * Bin(n, k - 1),
                                    hi * lo * Bin(n, k) * Bin(n, k));
      });
}

// C(l,m)^2 / (C(l,m+1) C(l,m-1)) >= C(n,m)^2 / (C(n,m+1) C(n,m-1)),
// cross-multiplied; requires 0 < m < l <= n.
inline bool BinomialRatioComparison(int l, int n, int mm) {
  using internal::Bin;
  if (mm <= 0 || mm >= l || l > n) {
    throw Error(ErrorKind::kInvalidParameters, "need 0 < m < l <= n");
  }
  return Bin(l, mm) * Bin(l, mm) * Bin(n, mm + 1) * Bin(n, mm - 1) >=
         Bin(n, mm) * Bin(n, mm) * Bin(l, mm + 1) * Bin(l, mm - 1);
}

// The Mason ratio bounded through the simplification, at w >= 0.
inline Check CheckSimplification(const Matroid& m, int index, int mm,
                                 const std::vector<Rational>& w) {
  using internal::Bin;
  using internal::RatJ;
  const int n = m.size();
  internal::RequireWeights(w, n, false);
  return internal::Evaluate(
      "simplification",
      {{"matroid", index}, {"m", mm}, {"w", internal::RatVecJ(w)}},
      [&](Check& out) {
        Simplification simple = Simplify(m);
        const int l = simple.matroid.size();
        out.witness["rank_one_flats"] = l;
        if (simple.degenerate) {
          out.verdict = Verdict::kNotApplicable;
          out.witness["reason"] = "no rank-one flats";
          return;
        }
        if (mm <= 0 || mm >= l) {
          out.verdict = Verdict::kVacuous;
          out.witness["annotation"] = "no valid m for this many flats";
          return;
        }
        // f_M(w) = f_simple(class sums of w); loops never occur in an
        // independent set.
        StructureReport st = Structure(m);
        std::vector<Rational> pooled(l, Rational(0));
        for (int j = 0; j < l; ++j) {
          for (Subset cls : st.parallel_classes) {
            if (Contains(cls, simple.representative[j])) {
              for (int e : Elements(cls)) pooled[j] += w[e];
            }
          }
        }
        std::vector<Rational> f(3), g(3);
        bool pooled_agree = true;
        for (int d = -1; d <= 1; ++d) {
          f[d + 1] = FmEval(m, mm + d, w);
          g[d + 1] = FmEval(simple.matroid, mm + d, pooled);
          pooled_agree = pooled_agree && f[d + 1] == g[d + 1];
        }
        internal::InequalityVerdict(
            out, f[1] * f[1] * Bin(l, mm + 1) * Bin(l, mm - 1),
            Bin(l, mm) * Bin(l, mm) * f[2] * f[0]);
        const bool binomial = BinomialRatioComparison(l, n, mm);
        out.witness["binomial_comparison"] = binomial;
        out.witness["pooled_agree"] = pooled_agree;
        if (!binomial || !pooled_agree) out.verdict = Verdict::kFail;
      });
}

// The numerator Z H_Z - grad Z grad Z^T of the Hessian of log Z_M has no
// positive eigenvalue. Along w its quadratic form equals -n Z^2 by Euler.
inline Check CheckLogConcavity(const Matroid& m, int index, const Rational& q,
                               const std::vector<Rational>& w) {
  using internal::RatJ;
  const int n = m.size();
  internal::RequireUnitQ(q);
  internal::RequireWeights(w, n + 1, true);
  return internal::Evaluate(
      "logconcavity",
      {{"matroid", index}, {"q", RatJ(q)}, {"w", internal::RatVecJ(w)}},
      [&](Check& out) {
        const CoeffSeq<Rational> ones = CoeffSeq<Rational>::Ones(n);
        const MultiIndex zero = MultiIndex::Zero(n);
        const Rational z = ZWeightedEval(m, ones, q, w);
        if (sgn(z) <= 0) {
          throw Error(ErrorKind::kImpossibleState,
                      "Z_M(w) <= 0 at a positive point");
        }
        SymMatrix<Rational> numerator = Hessian(m, ones, q, zero, w);
        numerator *= z;
        const std::vector<Rational> g = Gradient(m, ones, q, zero, w);
        for (int i = 0; i <= n; ++i) {
          for (int j = i; j <= n; ++j) {
            numerator.Set(i, j, numerator(i, j) - g[i] * g[j]);
          }
        }
        EigenSignature s = Signature(numerator);
        const Rational along_w = Bilinear(w, numerator, w);
        const bool euler = along_w == -n * z * z;
        out.witness["signature"] = SignatureToJson(s);
        out.witness["along_w"] = RatJ(along_w);
        out.witness["euler_consistent"] = euler;
        out.verdict =
            s.positive == 0 && euler ? Verdict::kPass : Verdict::kFail;
      });
}

// Re-runs a check from its recorded inputs.
inline Check RunCheck(const std::string& theorem, const nlohmann::json& in,
                      const std::vector<NamedMatroid>& matroids) {
  using internal::RatVecFrom;
  try {
    const int index = in.at("matroid").get<int>();
    if (index < 0 || index >= static_cast<int>(matroids.size())) {
      throw Error(ErrorKind::kParseError, "matroid index out of range");
    }
    const Matroid& m = matroids[index].matroid;
    auto q = [&] { return RationalFromJson(in.at("q")); };
    auto w = [&] { return RatVecFrom(in.at("w")); };
    auto c = [&] { return CoeffSeq<Rational>(RatVecFrom(in.at("c"))); };
    if (theorem == "qHR") return CheckTheorem1(m, index, q(), w());
    if (theorem == "cqHR") {
      return CheckTheorem2(m, index, c(), q(),
                           MultiIndex{in.at("alpha").get<std::vector<int>>()},
                           w());
    }
    if (theorem == "deg2") {
      if (in.at("part") == "b") return CheckDegreeTwoIdentity(m, index, q(), w());
      return CheckDegreeTwoInequality(m, index, c(), q(), w());
    }
    if (theorem == "ulc") {
      return CheckUlc(m, index, q(), w(), in.at("m").get<int>());
    }
    if (theorem == "mason") {
      const int k = in.at("k").get<int>();
      if (in.at("form") == "counts") return CheckMasonCounts(m, index, k);
      return CheckMasonRatio(m, index, k, w());
    }
    if (theorem == "simplification") {
      return CheckSimplification(m, index, in.at("m").get<int>(), w());
    }
    if (theorem == "logconcavity") return CheckLogConcavity(m, index, q(), w());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kParseError,
                std::string("malformed check inputs: ") + e.what());
  }
  throw Error(ErrorKind::kParseError, "unknown theorem '" + theorem + "'");
}

// ---------------------------------------------------------------------------
// Campaign configuration and sampling.

inline std::vector<Rational> DefaultQGrid() {
  return {Rational(1), Rational(1, 2), Rational(1, 4), Rational(1, 10),
          Rational(1, 100)};
}

struct CampaignConfig {
  std::string campaign = "verify";
  std::vector<Rational> q_grid = DefaultQGrid();
  int random_q = 0;
  // Per-theorem sample count; unset means each campaign's default.
  std::optional<int> trials;
  int w_bound = 100;
  bool adversarial = true;
  int c_samples = 5;
  int alpha_samples = 10;
  // Explicit coefficient sequence, replacing the sampled family.
  std::optional<std::vector<Rational>> c;
  std::uint64_t seed = 1;
  int workers = 0;
  bool timing = false;

  void Validate() const {
    for (const auto& q : q_grid) {
      if (sgn(q) <= 0 || q > 1) {
        throw Error(ErrorKind::kConfigError,
                    "q-grid value " + FormatRational(q) + " outside (0, 1]");
      }
    }
    if (q_grid.empty() && random_q <= 0) {
      throw Error(ErrorKind::kConfigError, "no q values to sample");
    }
    if ((trials && *trials < 0) || random_q < 0 || c_samples < 0 ||
        alpha_samples < 0 || w_bound < 1) {
      throw Error(ErrorKind::kConfigError, "sample counts must be >= 0");
    }
    if (c) {
      for (const auto& x : *c) {
        if (sgn(x) <= 0) {
          throw Error(ErrorKind::kConfigError, "c must be positive");
        }
      }
      if (!CoeffSeq<Rational>(*c).strictly_log_concave()) {
        throw Error(ErrorKind::kConfigError,
                    "c is not strictly log-concave");
      }
    }
  }

  int Trials(int fallback) const { return trials.value_or(fallback); }

  // Grid values followed by seeded random values in (0, 1].
  std::vector<Rational> QValues() const {
    std::vector<Rational> out = q_grid;
    Rng rng(DeriveSeed(seed, {0xA11CE}));
    for (int i = 0; i < random_q; ++i) out.push_back(UnitIntervalRational(rng));
    return out;
  }
};

enum TheoremTag : std::uint64_t {
  kTagQhr = 1,
  kTagCqhr,
  kTagDeg2,
  kTagUlc,
  kTagMason,
  kTagSimplification,
  kTagLogConcavity,
};

// Positive weights; the first three samples are adversarial when enabled:
// dominated by w_0, the all-ones center, and alternating 10^{+-3} ratios.
inline std::vector<Rational> SamplePositiveWeights(Rng& rng, int dim,
                                                   int sample, bool adversarial,
                                                   int bound = 100) {
  std::vector<Rational> w(dim);
  if (adversarial && sample < 3) {
    for (int i = 0; i < dim; ++i) {
      if (sample == 0) w[i] = i == 0 ? Rational(1000) : Rational(1, 1000);
      if (sample == 1) w[i] = 1;
      if (sample == 2) w[i] = i % 2 == 0 ? Rational(1000) : Rational(1, 1000);
    }
    return w;
  }
  for (auto& x : w) x = PositiveRational(rng, bound);
  return w;
}

// Boundary-inclusive w >= 0: all ones, a unit vector, then random vectors
// with roughly a quarter of the coordinates zero.
inline std::vector<Rational> SampleNonnegativeWeights(Rng& rng, int dim,
                                                      int sample,
                                                      int bound = 100) {
  std::vector<Rational> w(dim, Rational(0));
  if (sample == 0) {
    std::fill(w.begin(), w.end(), Rational(1));
  } else if (sample == 1) {
    if (dim > 0) w[rng.Uniform(0, dim - 1)] = 1;
  } else {
    for (auto& x : w) {
      if (!rng.Bernoulli(1, 4)) x = PositiveRational(rng, bound);
    }
  }
  return w;
}

// Nonzero real vector with mixed signs and occasional zeros.
inline std::vector<Rational> SampleRealWeights(Rng& rng, int dim,
                                               int bound = 20) {
  std::vector<Rational> w(dim);
  bool nonzero = false;
  while (!nonzero) {
    for (auto& x : w) {
      x = rng.Bernoulli(1, 5) ? Rational(0) : PositiveRational(rng, bound);
      if (rng.Bernoulli(1, 2)) x = -x;
      nonzero = nonzero || sgn(x) != 0;
    }
  }
  return w;
}

// Nonzero w with Z^1_M(q, w) = 0: random coordinates, then one coordinate
// solved for. Needs n >= 2.
inline std::vector<Rational> SampleZeroLinearWeights(Rng& rng, const Matroid& m,
                                                     const Rational& q) {
  const int n = m.size();
  std::vector<Rational> coeff(n);
  for (int i = 0; i < n; ++i) coeff[i] = IntPow(q, -m.Rank(Singleton(i)));
  while (true) {
    std::vector<Rational> w = SampleRealWeights(rng, n);
    const int j = static_cast<int>(rng.Uniform(0, n - 1));
    Rational rest = 0;
    for (int i = 0; i < n; ++i) {
      if (i != j) rest += coeff[i] * w[i];
    }
    w[j] = -rest / coeff[j];
    if (std::any_of(w.begin(), w.end(),
                    [](const Rational& x) { return sgn(x) != 0; })) {
      return w;
    }
  }
}

// c_k = r^{k(n-k)} s^k scaled to integers; consecutive ratios
// c_m^2 / (c_{m-1} c_{m+1}) equal r^2 > 1. Sample 0 is r = 2, s = 1.
inline std::vector<Rational> LogConcaveFamily(int n, const Rational& r,
                                              const Rational& s) {
  std::vector<Rational> c(n + 1);
  mpz_class scale = 1;
  for (int k = 0; k <= n; ++k) {
    c[k] = IntPow(r, k * (n - k)) * IntPow(s, k);
    mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), c[k].get_den().get_mpz_t());
  }
  for (auto& x : c) x *= scale;
  return c;
}

inline std::vector<Rational> SampleLogConcaveC(Rng& rng, int n, int sample) {
  if (sample == 0) return LogConcaveFamily(n, Rational(2), Rational(1));
  return LogConcaveFamily(n, 1 + PositiveRational(rng, 4),
                          PositiveRational(rng, 5));
}

// All alpha with alpha_i <= 1 (i >= 1) and derivative degree >= 2.
inline std::vector<MultiIndex> AdmissibleAlphas(int n) {
  std::vector<MultiIndex> out;
  for (Subset s = 0; s <= FullSet(n); ++s) {
    const int size = Cardinality(s);
    for (int a0 = 0; a0 + size + 2 <= n; ++a0) {
      MultiIndex alpha = MultiIndex::Zero(n);
      alpha.orders[0] = a0;
      for (int i : Elements(s)) alpha.orders[i + 1] = 1;
      out.push_back(alpha);
    }
  }
  return out;
}

// Up to `count` distinct admissible alpha, always including alpha = 0.
inline std::vector<MultiIndex> SampleAlphas(Rng& rng, int n, int count) {
  std::vector<MultiIndex> all = AdmissibleAlphas(n);
  for (std::size_t i = all.size(); i > 2; --i) {
    std::swap(all[i - 1], all[1 + rng.Uniform(0, static_cast<long long>(i) - 2)]);
  }
  if (static_cast<int>(all.size()) > count) all.resize(std::max(count, 0));
  return all;
}

// Runs fn(0..count-1) on up to `workers` threads (0 = all cores). Results
// must be written to per-index slots so scheduling cannot change them.
inline void ParallelFor(int count, int workers,
                        const std::function<void(int)>& fn) {
  if (workers <= 0) {
    workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  }
  workers = std::min(workers, count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (int t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (int i; (i = next.fetch_add(1)) < count;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!error) error = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

// ---------------------------------------------------------------------------
// Reports.

struct VerificationReport {
  std::string campaign;
  std::vector<NamedMatroid> matroids;
  std::vector<Check> checks;
  nlohmann::json diagnostics;  // null unless a campaign adds some
  std::optional<double> seconds;

  int Count(Verdict v, std::string_view theorem = {}) const {
    return static_cast<int>(std::count_if(
        checks.begin(), checks.end(), [&](const Check& c) {
          return c.verdict == v && (theorem.empty() || c.theorem == theorem);
        }));
  }
  int failures() const { return Count(Verdict::kFail); }

  nlohmann::json Summary() const {
    auto tally = [&](std::string_view theorem) {
      nlohmann::json t = {{"total", 0}};
      for (Verdict v : {Verdict::kPass, Verdict::kFail, Verdict::kVacuous,
                        Verdict::kNotApplicable}) {
        t[VerdictName(v)] = Count(v, theorem);
      }
      int total = 0;
      for (const auto& c : checks) {
        total += theorem.empty() || c.theorem == theorem;
      }
      t["total"] = total;
      return t;
    };
    nlohmann::json s = tally({});
    nlohmann::json by = nlohmann::json::object();
    for (const auto& name : TheoremNames()) {
      if (tally(name)["total"] != 0) by[name] = tally(name);
    }
    s["by_theorem"] = by;
    int equalities = 0;
    for (const auto& c : checks) {
      equalities += c.witness.value("equality", false) ? 1 : 0;
    }
    s["equalities"] = equalities;
    if (seconds) s["seconds"] = *seconds;
    return s;
  }

  nlohmann::json ToJson() const {
    nlohmann::json ms = nlohmann::json::array();
    for (const auto& m : matroids) {
      nlohmann::json j = MatroidToJson(m.matroid);
      j["name"] = m.name;
      ms.push_back(std::move(j));
    }
    nlohmann::json cs = nlohmann::json::array();
    for (const auto& c : checks) {
      cs.push_back({{"theorem", c.theorem},
                    {"inputs", c.inputs},
                    {"verdict", VerdictName(c.verdict)},
                    {"witness", c.witness}});
    }
    nlohmann::json out = {{"campaign", campaign},
                          {"matroids", std::move(ms)},
                          {"checks", std::move(cs)},
                          {"summary", Summary()}};
    if (!diagnostics.is_null()) out["diagnostics"] = diagnostics;
    return out;
  }

  static VerificationReport FromJson(const nlohmann::json& j) {
    VerificationReport r;
    try {
      r.campaign = j.at("campaign").get<std::string>();
      for (const auto& m : j.at("matroids")) {
        r.matroids.push_back({m.value("name", ""), MatroidFromJson(m)});
      }
      for (const auto& c : j.at("checks")) {
        r.checks.push_back({c.at("theorem").get<std::string>(), c.at("inputs"),
                            ParseVerdict(c.at("verdict").get<std::string>()),
                            c.value("witness", nlohmann::json::object())});
      }
      if (j.contains("diagnostics")) r.diagnostics = j["diagnostics"];
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::kParseError,
                  std::string("malformed report: ") + e.what());
    }
    return r;
  }
};

// Re-runs every check of a report from its recorded inputs.
inline VerificationReport Replay(const VerificationReport& report,
                                 int workers = 0) {
  VerificationReport out;
  out.campaign = report.campaign;
  out.matroids = report.matroids;
  out.checks.resize(report.checks.size());
  ParallelFor(static_cast<int>(report.checks.size()), workers, [&](int i) {
    out.checks[i] = RunCheck(report.checks[i].theorem, report.checks[i].inputs,
                             report.matroids);
  });
  return out;
}

// ---------------------------------------------------------------------------
// Campaigns. Each matroid is one unit of parallel work with its own seed
// stream, and the per-matroid check lists are concatenated in corpus order.

namespace internal {

using MatroidTask = std::function<std::vector<Check>(
    const Matroid& m, int index, const std::function<Rng(std::uint64_t)>& rng)>;

inline VerificationReport RunPerMatroid(const std::vector<NamedMatroid>& corpus,
                                        const CampaignConfig& config,
                                        TheoremTag tag,
                                        const MatroidTask& task) {
  config.Validate();
  VerificationReport report;
  report.campaign = config.campaign;
  report.matroids = corpus;
  std::vector<std::vector<Check>> per(corpus.size());
  ParallelFor(static_cast<int>(corpus.size()), config.workers, [&](int i) {
    auto rng = [&](std::uint64_t stream) {
      return Rng(DeriveSeed(config.seed,
                            {tag, static_cast<std::uint64_t>(i), stream}));
    };
    per[i] = task(corpus[i].matroid, i, rng);
  });
  for (auto& list : per) {
    for (auto& c : list) report.checks.push_back(std::move(c));
  }
  return report;
}

}  // namespace internal

inline VerificationReport VerifyTheorem1(const std::vector<NamedMatroid>& corpus,
                                         const CampaignConfig& config) {
  const std::vector<Rational> qs = config.QValues();
  const int trials = config.Trials(20);
  return internal::RunPerMatroid(
      corpus, config, kTagQhr,
      [&](const Matroid& m, int index, const auto& make_rng) {
        std::vector<Check> out;
        for (std::size_t qi = 0; qi < qs.size(); ++qi) {
          Rng rng = make_rng(qi);
          for (int s = 0; s < trials; ++s) {
            auto w = SamplePositiveWeights(rng, m.size() + 1, s,
                                           config.adversarial, config.w_bound);
            out.push_back(CheckTheorem1(m, index, qs[qi], w));
          }
        }
        return out;
      });
}

inline VerificationReport VerifyTheorem2(const std::vector<NamedMatroid>& corpus,
                                         const CampaignConfig& config) {
  const std::vector<Rational> qs = config.QValues();
  const int trials = config.Trials(10);
  return internal::RunPerMatroid(
      corpus, config, kTagCqhr,
      [&](const Matroid& m, int index, const auto& make_rng) {
        std::vector<Check> out;
        const int n = m.size();
        if (n < 2) return out;
        Rng rng = make_rng(0);
        if (config.c && static_cast<int>(config.c->size()) != n + 1) {
          throw Error(ErrorKind::kConfigError,
                      "c has length " + std::to_string(config.c->size()) +
                          " but a matroid has n + 1 = " + std::to_string(n + 1));
        }
        const int c_count = config.c ? 1 : config.c_samples;
        for (int ci = 0; ci < c_count; ++ci) {
          CoeffSeq<Rational> c(config.c ? *config.c
                                        : SampleLogConcaveC(rng, n, ci));
          for (const MultiIndex& alpha :
               SampleAlphas(rng, n, config.alpha_samples)) {
            for (int s = 0; s < trials; ++s) {
              const Rational q = s < static_cast<int>(qs.size())
                                     ? qs[s]
                                     : UnitIntervalRational(rng);
              auto w = SamplePositiveWeights(rng, n + 1, s, false,
                                             config.w_bound);
              out.push_back(CheckTheorem2(m, index, c, q, alpha, w));
            }
          }
        }
        return out;
      });
}

// Per matroid: `trials` identity checks, `trials` inequality checks at
// mixed-sign w, and trials / 10 (at least one) on the Z^1 = 0 hyperplane.
inline VerificationReport VerifyDegreeTwo(const std::vector<NamedMatroid>& corpus,
                                          const CampaignConfig& config) {
  const std::vector<Rational> qs = config.QValues();
  const int trials = config.Trials(100);
  return internal::RunPerMatroid(
      corpus, config, kTagDeg2,
      [&](const Matroid& m, int index, const auto& make_rng) {
        std::vector<Check> out;
        const int n = m.size();
        if (n < 2) return out;
        Rng rng = make_rng(0);
        auto pick_q = [&](int s) {
          return s < static_cast<int>(qs.size()) ? qs[s]
                                                 : UnitIntervalRational(rng);
        };
        auto pick_c = [&](int s) {
          return CoeffSeq<Rational>(
              config.c ? *config.c
                       : SampleLogConcaveC(rng, n, s % std::max(1, config.c_samples)));
        };
        for (int s = 0; s < trials; ++s) {
          const Rational q = pick_q(s);
          out.push_back(
              CheckDegreeTwoIdentity(m, index, q, SampleRealWeights(rng, n)));
        }
        for (int s = 0; s < trials; ++s) {
          const Rational q = pick_q(s);
          auto c = pick_c(s);
          out.push_back(CheckDegreeTwoInequality(m, index, c, q,
                                                 SampleRealWeights(rng, n)));
        }
        for (int s = 0; s < std::max(1, trials / 10); ++s) {
          const Rational q = pick_q(s);
          auto c = pick_c(s);
          out.push_back(CheckDegreeTwoInequality(
              m, index, c, q, SampleZeroLinearWeights(rng, m, q)));
        }
        return out;
      });
}

inline VerificationReport VerifyUlc(const std::vector<NamedMatroid>& corpus,
                                    const CampaignConfig& config) {
  const std::vector<Rational> qs = config.QValues();
  const int trials = config.Trials(20);
  return internal::RunPerMatroid(
      corpus, config, kTagUlc,
      [&](const Matroid& m, int index, const auto& make_rng) {
        std::vector<Check> out;
        const int n = m.size();
        for (std::size_t qi = 0; qi < qs.size(); ++qi) {
          Rng rng = make_rng(qi);
          for (int s = 0; s < trials; ++s) {
            auto w = SampleNonnegativeWeights(rng, n, s, config.w_bound);
            for (int mm = 1; mm < n; ++mm) {
              out.push_back(CheckUlc(m, index, qs[qi], w, mm));
            }
          }
        }
        return out;
      });
}

inline VerificationReport VerifyMason(const std::vector<NamedMatroid>& corpus,
                                      const CampaignConfig& config) {
  const int trials = config.Trials(10);
  return internal::RunPerMatroid(
      corpus, config, kTagMason,
      [&](const Matroid& m, int index, const auto& make_rng) {
        std::vector<Check> out;
        const int n = m.size();
        for (int k = 1; k < n; ++k) out.push_back(CheckMasonCounts(m, index, k));
        Rng rng = make_rng(0);
        for (int s = 0; s < trials; ++s) {
          auto w = SampleNonnegativeWeights(rng, n, s, config.w_bound);
          for (int k = 1; k < n; ++k) {
            out.push_back(CheckMasonRatio(m, index, k, w));
          }
        }
        return out;
      });
}

inline VerificationReport VerifySimplificationBound(
    const std::vector<NamedMatroid>& corpus, const CampaignConfig& config) {
  const int trials = config.Trials(5);
  return internal::RunPerMatroid(
      corpus, config, kTagSimplification,
      [&](const Matroid& m, int index, const auto& make_rng) {
        std::vector<Check> out;
        const int n = m.size();
        Rng rng = make_rng(0);
        // Sample 0 of the nonnegative sampler is the all-ones point.
        for (int s = 0; s < std::max(1, trials); ++s) {
          auto w = SampleNonnegativeWeights(rng, n, s, config.w_bound);
          for (int mm = 1; mm < std::max(2, n); ++mm) {
            out.push_back(CheckSimplification(m, index, mm, w));
          }
        }
        return out;
      });
}

inline VerificationReport VerifyLogConcavity(
    const std::vector<NamedMatroid>& corpus, const CampaignConfig& config) {
  const std::vector<Rational> qs = config.QValues();
  const int trials = config.Trials(20);
  return internal::RunPerMatroid(
      corpus, config, kTagLogConcavity,
      [&](const Matroid& m, int index, const auto& make_rng) {
        std::vector<Check> out;
        for (std::size_t qi = 0; qi < qs.size(); ++qi) {
          Rng rng = make_rng(qi);
          for (int s = 0; s < trials; ++s) {
            auto w = SamplePositiveWeights(rng, m.size() + 1, s,
                                           config.adversarial, config.w_bound);
            out.push_back(CheckLogConcavity(m, index, qs[qi], w));
          }
        }
        return out;
      });
}

// Hessians for c_k = r^{k(n-k)} with r = 1 + 2^{-j}, j = 1..8, against the
// constant sequence at the same point. Diagnostic only.
inline nlohmann::json ConstantSequenceDiagnostics(const Matroid& m,
                                                  const Rational& q,
                                                  const std::vector<Rational>& w) {
  const int n = m.size();
  const MultiIndex zero = MultiIndex::Zero(n);
  SymMatrix<Rational> target =
      Hessian(m, CoeffSeq<Rational>::Ones(n), q, zero, w);
  nlohmann::json out = nlohmann::json::array();
  for (int j = 1; j <= 8; ++j) {
    const Rational r = 1 + Rational(1, 1u << j);
    SymMatrix<Rational> h = Hessian(
        m, CoeffSeq<Rational>(LogConcaveFamily(n, r, Rational(1))), q, zero, w);
    // Undo the integer scaling so entries are comparable: divide by c_0.
    const Rational c0 = LogConcaveFamily(n, r, Rational(1))[0];
    double gap = 0;
    for (int a = 0; a <= n; ++a) {
      for (int b = 0; b <= n; ++b) {
        gap = std::max(gap, std::fabs(Rational(h(a, b) / c0 - target(a, b)).get_d()));
      }
    }
    out.push_back({{"j", j},
                   {"r", internal::RatJ(r)},
                   {"signature", SignatureToJson(Signature(h))},
                   {"max_entry_gap", gap}});
  }
  return out;
}

inline VerificationReport RunCampaign(std::string_view theorem,
                                      const std::vector<NamedMatroid>& corpus,
                                      const CampaignConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  VerificationReport report;
  if (theorem == "all") {
    report.campaign = config.campaign;
    report.matroids = corpus;
    for (const auto& name : TheoremNames()) {
      VerificationReport part = RunCampaign(name, corpus, config);
      for (auto& c : part.checks) report.checks.push_back(std::move(c));
      if (!part.diagnostics.is_null()) report.diagnostics = part.diagnostics;
    }
  } else if (theorem == "qHR") {
    report = VerifyTheorem1(corpus, config);
    report.diagnostics = nlohmann::json::array();
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      const Matroid& m = corpus[i].matroid;
      if (m.size() < 2) continue;
      report.diagnostics.push_back(
          {{"matroid", i},
           {"approximation",
            ConstantSequenceDiagnostics(
                m, Rational(1), std::vector<Rational>(m.size() + 1, Rational(1)))}});
    }
  } else if (theorem == "cqHR") {
    report = VerifyTheorem2(corpus, config);
  } else if (theorem == "deg2") {
    report = VerifyDegreeTwo(corpus, config);
  } else if (theorem == "ulc") {
    report = VerifyUlc(corpus, config);
  } else if (theorem == "mason") {
    report = VerifyMason(corpus, config);
  } else if (theorem == "simplification") {
    report = VerifySimplificationBound(corpus, config);
  } else if (theorem == "logconcavity") {
    report = VerifyLogConcavity(corpus, config);
  } else {
    throw Error(ErrorKind::kConfigError,
                "unknown theorem '" + std::string(theorem) + "'");
  }
  if (config.timing) {
    report.seconds = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  }
  return report;
}

}  // namespace potts_hodge

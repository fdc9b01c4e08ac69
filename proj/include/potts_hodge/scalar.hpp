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

#include <gmpxx.h>

#include <cmath>
#include <concepts>
#include <cstdint>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "json.hpp"
#include "potts_hodge/error.hpp"

namespace potts_hodge {

using Rational = mpq_class;

// Two arithmetic modes: exact rationals and IEEE doubles. Functions are
// templated on the scalar so mixing the two is a compile error.
template <class T>
concept Scalar = std::same_as<T, Rational> || std::same_as<T, double>;

template <Scalar T>
inline constexpr bool kIsExact = std::is_same_v<T, Rational>;

template <Scalar T>
T FromInt(long long v) {
  if constexpr (kIsExact<T>) {
    return Rational(mpz_class(std::to_string(v)));
  } else {
    return static_cast<double>(v);
  }
}

inline Rational FromUnsigned(std::uint64_t v) {
  return Rational(mpz_class(std::to_string(v)));
}

template <Scalar T>
T ConvertRational(const Rational& r) {
  if constexpr (kIsExact<T>) {
    return r;
  } else {
    return r.get_d();
  }
}

template <Scalar T>
double ToDouble(const T& v) {
  if constexpr (kIsExact<T>) {
    return v.get_d();
  } else {
    return v;
  }
}

template <Scalar T>
int Sign(const T& v) {
  if constexpr (kIsExact<T>) {
    return sgn(v);
  } else {
    return (v > 0) - (v < 0);
  }
}

template <Scalar T>
T Abs(const T& v) {
  if constexpr (kIsExact<T>) {
    return abs(v);
  } else {
    return std::fabs(v);
  }
}

// base^exponent for any integer exponent; base must be nonzero when the
// exponent is negative.
template <Scalar T>
T IntPow(const T& base, int exponent) {
  T result = FromInt<T>(1);
  T factor = base;
  unsigned e = static_cast<unsigned>(exponent < 0 ? -exponent : exponent);
  while (e != 0) {
    if (e & 1u) result *= factor;
    factor *= factor;
    e >>= 1;
  }
  if (exponent < 0) return FromInt<T>(1) / result;
  return result;
}

inline std::vector<double> ToDoubles(const std::vector<Rational>& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x.get_d());
  return out;
}

// Accepts "p", "-p", "p/q". Decimal and float notation is rejected so exact
// mode never silently rounds.
inline Rational ParseRational(std::string_view text) {
  std::string s(text);
  auto bad = [&]() {
    return Error(ErrorKind::kInvalidParameters,
                 "expected rational 'num/den', got '" + s + "'");
  };
  if (s.empty()) throw bad();
  auto valid_integer = [](std::string_view part, bool allow_sign) {
    if (part.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (part[0] == '-' || part[0] == '+')) i = 1;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i) {
      if (part[i] < '0' || part[i] > '9') return false;
    }
    return true;
  };
  std::size_t slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_integer(num, true) || !valid_integer(den, false)) throw bad();
  if (num[0] == '+') num.erase(0, 1);
  mpz_class d(den);
  if (d == 0) throw bad();
  Rational r(mpz_class(num), d);
  r.canonicalize();
  return r;
}

inline std::vector<Rational> ParseRationalList(std::string_view text) {
  std::vector<Rational> out;
  std::string s(text);
  if (s.empty()) return out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = s.find(',', start);
    out.push_back(ParseRational(s.substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

inline std::string FormatRational(const Rational& r) { return r.get_str(); }

// Exact scalars serialize as {"num": "...", "den": "..."}; doubles as numbers.
inline nlohmann::json ScalarToJson(const Rational& r) {
  return {{"num", r.get_num().get_str()}, {"den", r.get_den().get_str()}};
}

inline nlohmann::json ScalarToJson(double d) { return d; }

inline Rational RationalFromJson(const nlohmann::json& j) {
  if (j.is_object()) {
    mpz_class den(j.at("den").get<std::string>());
    if (den == 0) {
      throw Error(ErrorKind::kParseError, "zero denominator in scalar");
    }
    Rational r(mpz_class(j.at("num").get<std::string>()), den);
    r.canonicalize();
    return r;
  }
  if (j.is_number_integer()) {
    return Rational(mpz_class(std::to_string(j.get<long long>())));
  }
  if (j.is_string()) return ParseRational(j.get<std::string>());
  throw Error(ErrorKind::kParseError,
              "exact scalar must be {num,den}, an integer, or 'p/q' string");
}

template <Scalar T>
T ScalarFromJson(const nlohmann::json& j) {
  if constexpr (kIsExact<T>) {
    return RationalFromJson(j);
  } else {
    if (j.is_number()) return j.get<double>();
    return RationalFromJson(j).get_d();
  }
}

template <Scalar T>
nlohmann::json VectorToJson(const std::vector<T>& v) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& x : v) out.push_back(ScalarToJson(x));
  return out;
}

template <Scalar T>
std::vector<T> VectorFromJson(const nlohmann::json& j) {
  std::vector<T> out;
  for (const auto& x : j) out.push_back(ScalarFromJson<T>(x));
  return out;
}

}  // namespace potts_hodge

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

#include <string>
#include <vector>

#include "json.hpp"
#include "potts_hodge/error.hpp"
#include "potts_hodge/scalar.hpp"

namespace potts_hodge {

// Dense symmetric matrix; Set() writes both triangles so entries(i,j) and
// entries(j,i) are always the same value.
template <Scalar T>
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(int dim)
      : dim_(dim),
        entries_(static_cast<std::size_t>(dim) * dim, FromInt<T>(0)) {}

  static SymMatrix FromRows(const std::vector<std::vector<T>>& rows) {
    const int dim = static_cast<int>(rows.size());
    SymMatrix out(dim);
    for (int i = 0; i < dim; ++i) {
      if (static_cast<int>(rows[i].size()) != dim) {
        throw Error(ErrorKind::kInvalidParameters, "matrix is not square");
      }
      for (int j = 0; j < dim; ++j) {
        if (rows[i][j] != rows[j][i]) {
          throw Error(ErrorKind::kInvalidParameters,
                      "matrix is not symmetric at (" + std::to_string(i) +
                          "," + std::to_string(j) + ")");
        }
        out.entries_[static_cast<std::size_t>(i) * dim + j] = rows[i][j];
      }
    }
    return out;
  }

  static SymMatrix Identity(int dim) {
    SymMatrix out(dim);
    for (int i = 0; i < dim; ++i) out.Set(i, i, FromInt<T>(1));
    return out;
  }

  // Zero diagonal, ones elsewhere.
  static SymMatrix AllOnesOffDiagonal(int dim) {
    SymMatrix out(dim);
    for (int i = 0; i < dim; ++i) {
      for (int j = i + 1; j < dim; ++j) out.Set(i, j, FromInt<T>(1));
    }
    return out;
  }

  int dim() const { return dim_; }

  const T& operator()(int i, int j) const {
    return entries_[static_cast<std::size_t>(i) * dim_ + j];
  }

  void Set(int i, int j, const T& value) {
    entries_[static_cast<std::size_t>(i) * dim_ + j] = value;
    entries_[static_cast<std::size_t>(j) * dim_ + i] = value;
  }

  std::vector<std::vector<T>> Rows() const {
    std::vector<std::vector<T>> rows(dim_, std::vector<T>(dim_));
    for (int i = 0; i < dim_; ++i) {
      for (int j = 0; j < dim_; ++j) rows[i][j] = (*this)(i, j);
    }
    return rows;
  }

  SymMatrix Principal(const std::vector<int>& indices) const {
    SymMatrix out(static_cast<int>(indices.size()));
    for (std::size_t a = 0; a < indices.size(); ++a) {
      for (std::size_t b = a; b < indices.size(); ++b) {
        out.Set(static_cast<int>(a), static_cast<int>(b),
                (*this)(indices[a], indices[b]));
      }
    }
    return out;
  }

  SymMatrix& operator+=(const SymMatrix& other) {
    for (std::size_t k = 0; k < entries_.size(); ++k) {
      entries_[k] += other.entries_[k];
    }
    return *this;
  }

  SymMatrix& operator*=(const T& factor) {
    for (T& x : entries_) x *= factor;
    return *this;
  }

  T MaxAbs() const {
    T best = FromInt<T>(0);
    for (const T& x : entries_) {
      if (Abs<T>(x) > best) best = Abs<T>(x);
    }
    return best;
  }

  bool IsZero() const {
    for (const T& x : entries_) {
      if (Sign(x) != 0) return false;
    }
    return true;
  }

  bool operator==(const SymMatrix& other) const {
    return dim_ == other.dim_ && entries_ == other.entries_;
  }

 private:
  int dim_ = 0;
  std::vector<T> entries_;
};

template <Scalar T>
std::vector<T> MatVec(const SymMatrix<T>& a, const std::vector<T>& v) {
  std::vector<T> out(a.dim(), FromInt<T>(0));
  for (int i = 0; i < a.dim(); ++i) {
    for (int j = 0; j < a.dim(); ++j) out[i] += a(i, j) * v[j];
  }
  return out;
}

// u^T A v.
template <Scalar T>
T Bilinear(const std::vector<T>& u, const SymMatrix<T>& a,
           const std::vector<T>& v) {
  if (static_cast<int>(u.size()) != a.dim() ||
      static_cast<int>(v.size()) != a.dim()) {
    throw Error(ErrorKind::kInvalidParameters,
                "vector length does not match matrix dimension");
  }
  std::vector<T> av = MatVec(a, v);
  T total = FromInt<T>(0);
  for (int i = 0; i < a.dim(); ++i) total += u[i] * av[i];
  return total;
}

// S^T A S for a square (not necessarily symmetric) S given by rows.
template <Scalar T>
SymMatrix<T> Congruence(const SymMatrix<T>& a,
                        const std::vector<std::vector<T>>& s) {
  const int d = a.dim();
  std::vector<std::vector<T>> as(d, std::vector<T>(d, FromInt<T>(0)));
  for (int i = 0; i < d; ++i) {
    for (int k = 0; k < d; ++k) {
      if (Sign(a(i, k)) == 0) continue;
      for (int j = 0; j < d; ++j) as[i][j] += a(i, k) * s[k][j];
    }
  }
  SymMatrix<T> out(d);
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) {
      T v = FromInt<T>(0);
      for (int k = 0; k < d; ++k) v += s[k][i] * as[k][j];
      out.Set(i, j, v);
    }
  }
  return out;
}

template <Scalar T>
nlohmann::json SymMatrixToJson(const SymMatrix<T>& a) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < a.dim(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < a.dim(); ++j) row.push_back(ScalarToJson(a(i, j)));
    rows.push_back(std::move(row));
  }
  return {{"dim", a.dim()}, {"entries", std::move(rows)}};
}

template <Scalar T>
SymMatrix<T> SymMatrixFromJson(const nlohmann::json& j) {
  try {
    const int dim = j.at("dim").get<int>();
    std::vector<std::vector<T>> rows;
    for (const auto& row : j.at("entries")) {
      rows.push_back(VectorFromJson<T>(row));
    }
    if (static_cast<int>(rows.size()) != dim) {
      throw Error(ErrorKind::kParseError, "row count does not match dim");
    }
    return SymMatrix<T>::FromRows(rows);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kParseError, e.what());
  }
}

}  // namespace potts_hodge

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

// Deterministic matroid corpora for the verification campaigns.
//
// A corpus spec is a ';'-separated list of families. Each family is a name
// optionally followed by comma-separated constraints:
//
//   default                      uniform; graphic; linear
//   uniform[,n<=K][,n>=K][,n=K]  all U_{r,n}, 2 <= n <= 7 unless bounded
//   graphic[,edges<=K][,KN|CN|PN]
//                                connected simple graphs with 2..5 edges up
//                                to isomorphism, or one named graph
//   linear[,count=K][,seed=S][,n<=K]
//                                seeded random GF(2)/GF(3) matroids
//   structured                   hand-built matroids with loops and
//                                parallel classes

#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <numeric>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "potts_hodge/error.hpp"
#include "potts_hodge/matroid.hpp"
#include "potts_hodge/random.hpp"

namespace potts_hodge {

struct NamedMatroid {
  std::string name;
  Matroid matroid;
};

inline constexpr int kCorpusMinGround = 2;
inline constexpr int kCorpusMaxUniform = 7;
inline constexpr int kCorpusMaxEdges = 5;
inline constexpr int kCorpusLinearCount = 50;
inline constexpr int kCorpusLinearMaxN = 8;
inline constexpr std::uint64_t kCorpusLinearSeed = 2023;

using Edge = std::pair<int, int>;

inline std::vector<NamedMatroid> UniformFamily(int lo, int hi) {
  std::vector<NamedMatroid> out;
  for (int n = lo; n <= hi; ++n) {
    for (int r = 0; r <= n; ++r) {
      out.push_back({"U" + std::to_string(r) + "," + std::to_string(n),
                     MakeUniform(r, n)});
    }
  }
  return out;
}

namespace internal {

inline bool Connected(int vertices, const std::vector<Edge>& edges) {
  potts_hodge::internal::UnionFind uf(vertices + 1);
  for (auto [u, v] : edges) uf.Union(u, v);
  for (int v = 2; v <= vertices; ++v) {
    if (uf.Find(v) != uf.Find(1)) return false;
  }
  return true;
}

// Lexicographically smallest relabelled edge list over all vertex
// permutations; equal keys mean isomorphic graphs.
inline std::vector<Edge> CanonicalKey(int vertices,
                                      const std::vector<Edge>& edges) {
  std::vector<int> perm(vertices);
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<Edge> best;
  do {
    std::vector<Edge> relabelled;
    for (auto [u, v] : edges) {
      int a = perm[u - 1], b = perm[v - 1];
      relabelled.push_back({std::min(a, b), std::max(a, b)});
    }
    std::sort(relabelled.begin(), relabelled.end());
    if (best.empty() || relabelled < best) best = std::move(relabelled);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

inline std::string EdgeName(const std::vector<Edge>& edges) {
  std::string s = "G[";
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(edges[i].first) + std::to_string(edges[i].second);
  }
  return s + "]";
}

}  // namespace internal

// Connected simple graphs with lo..hi edges, one per isomorphism class,
// in order of edge count and then canonical edge list.
inline std::vector<NamedMatroid> GraphicFamily(int lo, int hi) {
  std::vector<NamedMatroid> out;
  for (int e = lo; e <= hi; ++e) {
    std::set<std::vector<Edge>> seen;
    // A connected graph with e edges has at most e + 1 vertices.
    for (int v = 2; v <= e + 1; ++v) {
      std::vector<Edge> all;
      for (int a = 1; a <= v; ++a) {
        for (int b = a + 1; b <= v; ++b) all.push_back({a, b});
      }
      const int slots = static_cast<int>(all.size());
      if (slots < e) continue;
      std::vector<bool> pick(slots, false);
      std::fill(pick.begin(), pick.begin() + e, true);
      do {
        std::vector<Edge> edges;
        for (int i = 0; i < slots; ++i) {
          if (pick[i]) edges.push_back(all[i]);
        }
        if (internal::Connected(v, edges)) {
          seen.insert(internal::CanonicalKey(v, edges));
        }
      } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    for (const auto& key : seen) {
      int vertices = 0;
      for (auto [a, b] : key) vertices = std::max({vertices, a, b});
      out.push_back({internal::EdgeName(key), MakeGraphic(vertices, key)});
    }
  }
  return out;
}

// K_k, C_k or P_k (k vertices) by name.
inline NamedMatroid NamedGraph(std::string_view name) {
  if (name.size() < 2 || !std::isdigit(static_cast<unsigned char>(name[1]))) {
    throw Error(ErrorKind::kConfigError,
                "unknown graph '" + std::string(name) + "'");
  }
  const int k = std::stoi(std::string(name.substr(1)));
  std::vector<Edge> edges;
  if (name[0] == 'K' && k >= 2) {
    for (int a = 1; a <= k; ++a) {
      for (int b = a + 1; b <= k; ++b) edges.push_back({a, b});
    }
  } else if (name[0] == 'C' && k >= 3) {
    for (int a = 1; a <= k; ++a) edges.push_back({a, a % k + 1});
  } else if (name[0] == 'P' && k >= 2) {
    for (int a = 1; a < k; ++a) edges.push_back({a, a + 1});
  } else {
    throw Error(ErrorKind::kConfigError,
                "unknown graph '" + std::string(name) + "'");
  }
  return {std::string(name), MakeGraphic(k, edges)};
}

// Random r x n matrices over GF(2) or GF(3), alternating the field.
inline std::vector<NamedMatroid> LinearFamily(int count, std::uint64_t seed,
                                              int max_n) {
  std::vector<NamedMatroid> out;
  for (int j = 0; j < count; ++j) {
    Rng rng(DeriveSeed(seed, {static_cast<std::uint64_t>(j)}));
    const long long p = j % 2 == 0 ? 2 : 3;
    const int n = static_cast<int>(rng.Uniform(kCorpusMinGround, max_n));
    const int rows = static_cast<int>(rng.Uniform(1, std::min(n, 4)));
    std::vector<std::vector<long long>> mat(rows, std::vector<long long>(n));
    for (auto& row : mat) {
      for (auto& x : row) x = rng.Uniform(0, p - 1);
    }
    out.push_back({"GF" + std::to_string(p) + "#" + std::to_string(j),
                   MakeLinear(p, mat)});
  }
  return out;
}

// Loops, parallel classes and mixtures, for the degree-two decomposition.
inline std::vector<NamedMatroid> StructuredFamily() {
  std::vector<NamedMatroid> out;
  auto add = [&](std::string name, int vertices, std::vector<Edge> edges) {
    out.push_back({std::move(name), MakeGraphic(vertices, edges)});
  };
  add("loop+pair", 2, {{1, 1}, {1, 2}, {1, 2}});
  add("two-pairs", 3, {{1, 2}, {1, 2}, {2, 3}, {2, 3}});
  add("triple+triangle", 3, {{1, 2}, {1, 2}, {1, 2}, {2, 3}, {1, 3}});
  add("C4+pair+loop", 4, {{1, 2}, {1, 2}, {2, 3}, {3, 4}, {4, 1}, {3, 3}});
  add("triangle+loops+triple", 4,
      {{1, 2}, {2, 3}, {3, 1}, {1, 1}, {2, 2}, {3, 4}, {3, 4}, {3, 4}});
  add("two-loops+edge", 2, {{1, 1}, {2, 2}, {1, 2}});
  out.push_back({"U2,4+loop", Matroid::FromOracle(
                                  5,
                                  [](Subset a) {
                                    return std::min(
                                        2, Cardinality(a & FullSet(4)));
                                  },
                                  Provenance::kRankTable)});
  return out;
}

inline std::vector<NamedMatroid> DefaultCorpus() {
  std::vector<NamedMatroid> out =
      UniformFamily(kCorpusMinGround, kCorpusMaxUniform);
  for (auto& m : GraphicFamily(2, kCorpusMaxEdges)) out.push_back(std::move(m));
  for (auto& m :
       LinearFamily(kCorpusLinearCount, kCorpusLinearSeed, kCorpusLinearMaxN)) {
    out.push_back(std::move(m));
  }
  return out;
}

namespace internal {

inline std::vector<std::string> Split(std::string_view text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t end = text.find(sep, start);
    std::string part(text.substr(start, end - start));
    part.erase(0, part.find_first_not_of(" \t"));
    part.erase(part.find_last_not_of(" \t") + 1);
    if (!part.empty()) parts.push_back(part);
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return parts;
}

// "key<=V", "key≤V", "key>=V", "key=V". Returns false if not a constraint.
inline bool ParseConstraint(std::string text, std::string* key,
                            std::string* op, long long* value) {
  for (auto [from, to] : {std::pair<std::string, std::string>{"≤", "<="},
                          {"≥", ">="}}) {
    for (std::size_t p; (p = text.find(from)) != std::string::npos;) {
      text.replace(p, from.size(), to);
    }
  }
  for (const char* candidate : {"<=", ">=", "="}) {
    std::size_t p = text.find(candidate);
    if (p == std::string::npos) continue;
    *key = text.substr(0, p);
    *op = candidate;
    std::string rest = text.substr(p + std::string(candidate).size());
    try {
      std::size_t used = 0;
      *value = std::stoll(rest, &used);
      if (used != rest.size()) throw std::invalid_argument(rest);
    } catch (const std::exception&) {
      throw Error(ErrorKind::kConfigError,
                  "bad number in corpus constraint '" + text + "'");
    }
    return true;
  }
  return false;
}

}  // namespace internal

inline std::vector<NamedMatroid> GenerateCorpus(std::string_view spec) {
  std::vector<NamedMatroid> out;
  auto append = [&](std::vector<NamedMatroid> more) {
    for (auto& m : more) out.push_back(std::move(m));
  };
  for (const std::string& family : internal::Split(spec, ';')) {
    std::vector<std::string> parts = internal::Split(family, ',');
    const std::string name = parts.front();
    int lo = kCorpusMinGround, hi = -1;
    long long count = kCorpusLinearCount;
    std::uint64_t seed = kCorpusLinearSeed;
    std::vector<std::string> graphs;
    for (std::size_t i = 1; i < parts.size(); ++i) {
      std::string key, op;
      long long value = 0;
      if (!internal::ParseConstraint(parts[i], &key, &op, &value)) {
        if (name == "graphic") {
          graphs.push_back(parts[i]);
          continue;
        }
        throw Error(ErrorKind::kConfigError,
                    "unrecognized corpus term '" + parts[i] + "'");
      }
      if (key == "n" || key == "edges") {
        if (op == "<=") hi = static_cast<int>(value);
        if (op == ">=") lo = static_cast<int>(value);
        if (op == "=") lo = hi = static_cast<int>(value);
      } else if (key == "count" && op == "=") {
        count = value;
      } else if (key == "seed" && op == "=") {
        seed = static_cast<std::uint64_t>(value);
      } else {
        throw Error(ErrorKind::kConfigError,
                    "unrecognized corpus constraint '" + parts[i] + "'");
      }
    }
    if (name == "default") {
      append(DefaultCorpus());
    } else if (name == "uniform") {
      append(UniformFamily(lo, hi < 0 ? kCorpusMaxUniform : hi));
    } else if (name == "graphic") {
      if (graphs.empty()) {
        append(GraphicFamily(lo, hi < 0 ? kCorpusMaxEdges : hi));
      }
      for (const auto& g : graphs) out.push_back(NamedGraph(g));
    } else if (name == "linear") {
      if (count < 0 || hi > kMaxGroundSet) {
        throw Error(ErrorKind::kConfigError, "bad linear corpus bounds");
      }
      append(LinearFamily(static_cast<int>(count), seed,
                          hi < 0 ? kCorpusLinearMaxN : hi));
    } else if (name == "structured") {
      append(StructuredFamily());
    } else {
      throw Error(ErrorKind::kConfigError,
                  "unknown corpus family '" + name + "'");
    }
  }
  return out;
}

}  // namespace potts_hodge

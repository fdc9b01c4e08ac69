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

#include <gtest/gtest.h>

#include <cstdlib>

#include "oracles.hpp"
#include "potts_hodge/matroid.hpp"
#include "potts_hodge/matroid_io.hpp"
#include "potts_hodge/random.hpp"

namespace potts_hodge {
namespace {

Subset S(std::initializer_list<int> one_based) {
  Subset s = 0;
  for (int e : one_based) s |= Singleton(e - 1);
  return s;
}

Matroid K3() { return MakeGraphic(3, {{1, 2}, {2, 3}, {1, 3}}); }

TEST(Uniform, RankIsMinOfSizeAndRank) {
  EXPECT_EQ(MakeUniform(2, 4).Rank(S({1, 2, 3})), 2);
  EXPECT_EQ(MakeUniform(3, 3).Rank(S({1, 2})), 2);
  EXPECT_EQ(MakeUniform(0, 2).Rank(S({1})), 0);
}

TEST(Uniform, RejectsRankAboveSize) {
  try {
    MakeUniform(3, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInvalidParameters);
  }
}

TEST(Graphic, TriangleAndDegenerateEdges) {
  EXPECT_EQ(K3().Rank(S({1, 2, 3})), 2);
  EXPECT_EQ(MakeGraphic(1, {{1, 1}}).Rank(S({1})), 0);
  EXPECT_EQ(MakeGraphic(2, {{1, 2}, {1, 2}}).Rank(S({1, 2})), 1);
}

TEST(Graphic, RejectsEndpointOutOfRange) {
  EXPECT_THROW(MakeGraphic(2, {{1, 3}}), Error);
}

TEST(Graphic, AgreesWithAcyclicSubsetOracle) {
  const std::vector<std::pair<int, int>> edges = {
      {1, 2}, {2, 3}, {3, 1}, {3, 4}, {4, 4}, {1, 2}, {4, 5}, {2, 5}};
  Matroid m = MakeGraphic(5, edges);
  for (Subset a = 0; a <= FullSet(8); ++a) {
    ASSERT_EQ(m.Rank(a), oracle::GraphicRank(5, edges, a)) << a;
  }
}

TEST(Linear, SmallExamples) {
  EXPECT_EQ(MakeLinear(2, {{1, 0}, {0, 1}}).Rank(S({1, 2})), 2);
  EXPECT_EQ(MakeLinear(3, {{0, 1}, {0, 2}}).Rank(S({1})), 0);
  EXPECT_EQ(MakeLinear(2, {{1, 0, 1}, {0, 1, 1}}).Rank(S({1, 2, 3})), 2);
}

TEST(Linear, RejectsCompositeField) {
  try {
    MakeLinear(4, {{1}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInvalidParameters);
  }
}

TEST(Linear, AgreesWithCoefficientEnumerationOracle) {
  for (long long p : {2LL, 3LL, 5LL, 7LL}) {
    Rng rng(100 + p);
    std::vector<std::vector<long long>> mat(3, std::vector<long long>(6));
    for (auto& row : mat) {
      for (auto& x : row) x = rng.Uniform(-p, 2 * p);
    }
    Matroid m = MakeLinear(p, mat);
    for (Subset a = 0; a <= FullSet(6); ++a) {
      ASSERT_EQ(m.Rank(a), oracle::LinearRank(p, mat, a)) << p << " " << a;
    }
  }
}

TEST(Linear, GraphicAndLinearAgreeOnTriangle) {
  Matroid linear = MakeLinear(2, {{1, 0, 1}, {0, 1, 1}});
  EXPECT_TRUE(K3().SameRankTable(linear));
}

TEST(RankTable, AcceptsValidTables) {
  EXPECT_EQ(MakeRankTable(1, {0, 1}).Rank(), 1);
  Matroid u12 = MakeRankTable(2, {0, 1, 1, 1});
  EXPECT_EQ(u12.Rank(S({1, 2})), 1);
}

TEST(RankTable, RejectsRankJumpWithWitness) {
  try {
    MakeRankTable(2, {0, 1, 1, 3});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNotAMatroid);
    EXPECT_NE(std::string(e.what()).find("unit increase"), std::string::npos);
  }
}

TEST(RankTable, RejectsSubmodularityFailure) {
  // r({1,2}) = r({1,3}) = 1 forces r({1,2,3}) = 1, but it is 2.
  std::vector<int> ranks = {0, 1, 1, 1, 1, 1, 2, 2};
  try {
    MakeRankTable(3, ranks);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNotAMatroid);
    EXPECT_NE(std::string(e.what()).find("submodularity"), std::string::npos);
  }
}

TEST(RankTable, RejectsWrongLength) {
  EXPECT_THROW(MakeRankTable(2, {0, 1, 1}), Error);
}

TEST(Constructors, ProduceValidRankFunctions) {
  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = static_cast<int>(rng.Uniform(1, 9));
    std::vector<std::vector<long long>> mat(3, std::vector<long long>(n));
    for (auto& row : mat) {
      for (auto& x : row) x = rng.Uniform(0, 2);
    }
    EXPECT_FALSE(ValidateRankAxioms(MakeLinear(3, mat)));
    std::vector<std::pair<int, int>> edges;
    for (int e = 0; e < n; ++e) {
      edges.emplace_back(rng.Uniform(1, 4), rng.Uniform(1, 4));
    }
    EXPECT_FALSE(ValidateRankAxioms(MakeGraphic(4, edges)));
  }
  for (int n = 0; n <= 12; n += 3) {
    EXPECT_FALSE(ValidateRankAxioms(MakeUniform(n / 2, n)));
  }
}

TEST(Contract, UniformMinor) {
  Minor minor = Contract(MakeUniform(2, 3), S({1}));
  EXPECT_TRUE(minor.matroid.SameRankTable(MakeUniform(1, 2)));
  EXPECT_EQ(minor.original_index, (std::vector<int>{1, 2}));
}

TEST(Contract, EmptyAndFullSets) {
  Matroid k3 = K3();
  EXPECT_TRUE(Contract(k3, 0).matroid.SameRankTable(k3));
  Minor all = Contract(k3, FullSet(3));
  EXPECT_EQ(all.matroid.size(), 0);
  EXPECT_EQ(all.matroid.Rank(), 0);
}

TEST(Contract, NonLoopDropsRankByOne) {
  Matroid m = MakeGraphic(4, {{1, 2}, {2, 3}, {3, 1}, {3, 4}, {4, 4}});
  StructureReport s = Structure(m);
  for (int e = 0; e < m.size(); ++e) {
    Minor minor = Contract(m, Singleton(e));
    EXPECT_FALSE(ValidateRankAxioms(minor.matroid));
    const int drop = Contains(s.loops, e) ? 0 : 1;
    EXPECT_EQ(minor.matroid.Rank(), m.Rank() - drop);
  }
}

TEST(Structure, LoopsAndParallelClasses) {
  StructureReport u12 = Structure(MakeUniform(1, 2));
  EXPECT_EQ(u12.loops, 0u);
  ASSERT_EQ(u12.rank_one_flats(), 1);
  EXPECT_EQ(u12.parallel_classes[0], S({1, 2}));

  StructureReport u23 = Structure(MakeUniform(2, 3));
  EXPECT_EQ(u23.loops, 0u);
  EXPECT_EQ(u23.rank_one_flats(), 3);

  StructureReport u02 = Structure(MakeUniform(0, 2));
  EXPECT_EQ(u02.loops, S({1, 2}));
  EXPECT_EQ(u02.rank_one_flats(), 0);
}

TEST(Structure, PartitionCoversGroundSet) {
  Matroid m = MakeGraphic(3, {{1, 2}, {1, 2}, {2, 2}, {2, 3}, {1, 2}, {3, 3}});
  StructureReport s = Structure(m);
  Subset all = s.loops;
  for (Subset cls : s.parallel_classes) {
    EXPECT_NE(cls, 0u);
    EXPECT_EQ(all & cls, 0u);
    all |= cls;
  }
  EXPECT_EQ(all, FullSet(6));
  EXPECT_EQ(s.loops, S({3, 6}));
  EXPECT_EQ(s.rank_one_flats(), 2);
}

TEST(Simplify, Examples) {
  Simplification u12 = Simplify(MakeUniform(1, 2));
  EXPECT_TRUE(u12.matroid.SameRankTable(MakeUniform(1, 1)));
  EXPECT_FALSE(u12.degenerate);

  EXPECT_TRUE(
      Simplify(MakeUniform(2, 3)).matroid.SameRankTable(MakeUniform(2, 3)));

  Matroid loop_plus_point = MakeRankTable(2, {0, 0, 1, 1});
  EXPECT_TRUE(
      Simplify(loop_plus_point).matroid.SameRankTable(MakeUniform(1, 1)));
}

TEST(Simplify, AllLoopsIsFlaggedDegenerate) {
  Simplification s = Simplify(MakeUniform(0, 3));
  EXPECT_TRUE(s.degenerate);
  EXPECT_EQ(s.matroid.size(), 0);
}

TEST(Simplify, Idempotent) {
  Matroid m = MakeGraphic(4, {{1, 2}, {1, 2}, {2, 3}, {3, 1}, {3, 4}, {4, 4},
                              {3, 4}});
  Matroid once = Simplify(m).matroid;
  EXPECT_TRUE(Simplify(once).matroid.SameRankTable(once));
  EXPECT_EQ(once.size(), Structure(m).rank_one_flats());
}

TEST(IndependentSets, Counts) {
  EXPECT_EQ(IndependentSetCounts(K3()),
            (std::vector<std::uint64_t>{1, 3, 3, 0}));
  EXPECT_EQ(IndependentSetCounts(MakeUniform(0, 2)),
            (std::vector<std::uint64_t>{1, 0, 0}));
  for (int n = 0; n <= 6; ++n) {
    auto counts = IndependentSetCounts(MakeUniform(n, n));
    for (int k = 0; k <= n; ++k) EXPECT_EQ(counts[k], Binomial(n, k));
  }
}

TEST(IndependentSets, ForestIsFree) {
  // A tree plus an isolated component: every edge subset is independent.
  Matroid forest = MakeGraphic(7, {{1, 2}, {2, 3}, {2, 4}, {5, 6}, {6, 7}});
  auto counts = IndependentSetCounts(forest);
  for (int k = 0; k <= 5; ++k) EXPECT_EQ(counts[k], Binomial(5, k));
}

TEST(IndependentSets, ResourceLimit) {
  setenv("POTTS_HODGE_MAX_N", "4", 1);
  Matroid big = MakeUniform(2, 6);
  try {
    IndependentSetCounts(big);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kResourceLimit);
  }
  // Rank queries still work through the oracle above the cap.
  EXPECT_EQ(big.Rank(FullSet(6)), 2);
  unsetenv("POTTS_HODGE_MAX_N");
}

TEST(Json, ParsesAllEncodings) {
  using nlohmann::json;
  Matroid u = MatroidFromJson(json::parse(R"({"type":"uniform","rank":2,"n":4})"));
  EXPECT_EQ(u.Rank(), 2);
  Matroid g = MatroidFromJson(
      json::parse(R"({"type":"graphic","vertices":3,"edges":[[1,2],[2,3],[1,3]]})"));
  EXPECT_TRUE(g.SameRankTable(K3()));
  Matroid l = MatroidFromJson(
      json::parse(R"({"type":"linear","field":2,"matrix":[[1,0,3],[0,1,-1]]})"));
  EXPECT_TRUE(l.SameRankTable(K3()));
  Matroid t = MatroidFromJson(
      json::parse(R"({"type":"rank_table","n":2,"ranks":[0,1,1,1]})"));
  EXPECT_TRUE(t.SameRankTable(MakeUniform(1, 2)));
}

TEST(Json, RankTableRoundTrip) {
  Matroid m = MakeGraphic(4, {{1, 2}, {2, 3}, {3, 1}, {3, 4}, {4, 4}});
  Matroid back = MatroidFromJson(MatroidToJson(m));
  EXPECT_TRUE(back.SameRankTable(m));
}

TEST(Json, ParseErrorsReportPosition) {
  try {
    ParseJsonText("{\"type\":\n \"uniform\", oops}");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kParseError);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  EXPECT_THROW(MatroidFromJson(nlohmann::json::parse(R"({"type":"bogus"})")),
               Error);
}

}  // namespace
}  // namespace potts_hodge

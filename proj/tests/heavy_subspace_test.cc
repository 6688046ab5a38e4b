// Copyright 2026 The Authors.
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


#include "fdc/heavy_subspace.h"

#include <gtest/gtest.h>

#include "fdc/errors.h"
#include "fdc/harness.h"
#include "support/test_support.h"

namespace fdc {
namespace {

using testing::points;

RationalSubspace full_span(const PointSet& s) {
  return RationalSubspace::span(s.points(), s.dim());
}

TEST(MaxWeightBasis, Examples) {
  const PointSet s = points(2, {{1, 0}, {2, 0}, {0, 1}});
  const auto v = RationalSubspace::full(2);
  EXPECT_EQ(max_weight_basis(s, v, {0.9, 0.8, 0.1}), (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(max_weight_basis(s, v, {0.5, 0.5, 0.5}), (std::vector<std::size_t>{0, 2}));
  const PointSet t = points(3, {{0, 1, 0}, {0, 2, 0}, {1, 0, 0}, {1, 1, 0}, {0, 0, 4}});
  EXPECT_EQ(max_weight_basis(t, RationalSubspace::full(3), WeightVector(5, 1.0)),
            (std::vector<std::size_t>{0, 2, 4}));
  EXPECT_EQ(max_weight_basis(points(1, {{5}}), RationalSubspace::full(1), {0.3}),
            (std::vector<std::size_t>{0}));
}

TEST(MaxWeightBasis, RankDeficient) {
  try {
    max_weight_basis(points(2, {{1, 0}, {3, 0}}), RationalSubspace::full(2), {1, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kRankDeficient);
  }
}

TEST(LpFeasible, TwoLinesOfTwoIsInfeasible) {
  const PointSet s = points(2, {{1, 0}, {1, 0}, {0, 1}, {0, 1}});
  EXPECT_FALSE(lp_feasible(s, RationalSubspace::full(2)).has_value());
}

TEST(LpFeasible, ThreeOnALineIsFeasible) {
  const PointSet s = points(2, {{1, 0}, {1, 0}, {1, 0}, {0, 1}});
  const auto v = lp_feasible(s, RationalSubspace::full(2));
  ASSERT_TRUE(v.has_value());
  // Every basis takes one e1 copy and the e2 point.
  const double sum = (*v)[0] + (*v)[1] + (*v)[2] + (*v)[3];
  for (int e1 = 0; e1 < 3; ++e1) {
    EXPECT_GE(sum, 2.0 * ((*v)[e1] + (*v)[3]) + 1.0 - 1.0 / 16.0);
  }
  const auto r = extract_subspace(s, RationalSubspace::full(2), *v);
  ASSERT_TRUE(r.found);
  EXPECT_EQ(r.subspace.dim(), 1u);
  EXPECT_TRUE(r.subspace.contains(IntVec{1, 0}));
  EXPECT_EQ(r.member_indices, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(LpFeasible, SingleBasisIsInfeasible) {
  EXPECT_FALSE(lp_feasible(points(2, {{1, 0}, {0, 1}}), RationalSubspace::full(2)).has_value());
  EXPECT_FALSE(lp_feasible(points(3, {{1, 0, 0}, {0, 1, 0}, {1, 1, 1}}),
                           RationalSubspace::full(3)).has_value());
}

TEST(ExtractSubspace, BinaryAndPerturbedAgree) {
  // 4 of 6 points on a plane in R^3: (n/k) kappa + 1 = 5 is not met for the
  // plane, but duplicate to 9 points with 7 on the plane.
  const PointSet s = points(3, {{1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {1, -1, 0}, {2, 1, 0},
                                {3, 1, 0}, {1, 2, 0}, {0, 0, 1}, {1, 1, 1}});
  const auto v = RationalSubspace::full(3);
  WeightVector binary{1, 1, 1, 1, 1, 1, 1, 0, 0};
  WeightVector perturbed{0.97, 0.99, 0.95, 0.98, 0.93, 0.96, 0.94, 0.05, 0.02};
  const auto a = extract_subspace(s, v, binary);
  const auto b = extract_subspace(s, v, perturbed);
  ASSERT_TRUE(a.found);
  ASSERT_TRUE(b.found);
  EXPECT_TRUE(a.subspace == b.subspace);
  EXPECT_EQ(a.subspace.dim(), 2u);
  EXPECT_EQ(a.member_indices.size(), 7u);
}

class EngineTest : public ::testing::TestWithParam<HeavyEngine> {};

TEST_P(EngineTest, Examples) {
  HeavySubspaceOptions opt;
  opt.engine = GetParam();
  const auto r2 = RationalSubspace::full(2);
  const auto a = find_heavy_subspace(points(2, {{1, 0}, {1, 0}, {0, 1}}), r2, opt);
  ASSERT_TRUE(a.found);
  EXPECT_TRUE(a.subspace == RationalSubspace::span({{1, 0}}, 2));
  EXPECT_EQ(a.member_indices, (std::vector<std::size_t>{0, 1}));
  EXPECT_FALSE(find_heavy_subspace(points(2, {{1, 0}, {0, 1}, {1, 1}}), r2, opt).found);
  const auto c = find_heavy_subspace(points(2, {{1, 0}, {0, 1}}), r2, opt);
  ASSERT_TRUE(c.found);
  EXPECT_TRUE(c.subspace == RationalSubspace::span({{1, 0}}, 2));
  // S not spanning V.
  const auto d = find_heavy_subspace(points(3, {{1, 0, 0}, {0, 1, 0}}),
                                     RationalSubspace::full(3), opt);
  ASSERT_TRUE(d.found);
  EXPECT_EQ(d.subspace.dim(), 2u);
}

TEST_P(EngineTest, AgreesWithBruteForce) {
  HeavySubspaceOptions opt;
  opt.engine = GetParam();
  int found = 0;
  for (std::uint64_t seed = 1; seed <= 120; ++seed) {
    const PointSet s = seed % 3 == 0 ? testing::equality_instance(seed)
                                     : testing::random_small_instance(seed);
    const auto v = RationalSubspace::full(s.dim());
    const auto expect = brute_force_heavy_subspace(s, v);
    const auto got = find_heavy_subspace(s, v, opt);
    ASSERT_EQ(got.found, expect.found) << "seed " << seed;
    if (got.found) {
      ++found;
      EXPECT_TRUE(is_heavy(s, v, got.subspace, false));
      EXPECT_LT(got.subspace.dim(), v.dim());
    }
  }
  EXPECT_GT(found, 20);
  EXPECT_LT(found, 110);
}

INSTANTIATE_TEST_SUITE_P(Engines, EngineTest,
                         ::testing::Values(HeavyEngine::kLinearProgram, HeavyEngine::kPacking));

TEST(Packing, LargeStructuredInstances) {
  // 60 points on a 3-dim subspace of R^8 plus 120 generic points: the plane
  // holds 60/180 = 1/3 >= 3/8? No: 3/8 = 0.375, so not heavy. Add a line
  // with 30 points: 30/180 > 1/8, heavy.
  std::vector<IntVec> basis = testing::random_points(8, 3, 3, 5).points();
  auto rows = testing::points_in_span(basis, 60, 5, 6);
  const auto generic = testing::random_points(8, 120, 1000, 7).points();
  rows.insert(rows.end(), generic.begin(), generic.end());
  PointSet s(8, rows);
  const auto v = RationalSubspace::full(8);
  EXPECT_FALSE(find_heavy_subspace(s, v).found);
  const auto line = testing::points_in_span({generic[0]}, 30, 9, 8);
  rows.insert(rows.end(), line.begin(), line.end());
  const auto r = find_heavy_subspace(PointSet(8, rows), v);
  ASSERT_TRUE(r.found);
  EXPECT_TRUE(is_heavy(PointSet(8, rows), v, r.subspace, true));
}

TEST(Packing, EqualityOnPlaneInR6) {
  // Exactly 2/6 of the points on a plane.
  std::vector<IntVec> basis = testing::random_points(6, 2, 3, 11).points();
  auto rows = testing::points_in_span(basis, 20, 6, 12);
  const auto generic = testing::random_points(6, 40, 500, 13).points();
  rows.insert(rows.end(), generic.begin(), generic.end());
  const PointSet s(6, rows);
  const auto r = find_heavy_subspace(s, RationalSubspace::full(6));
  ASSERT_TRUE(r.found);
  EXPECT_EQ(r.subspace.dim(), 2u);
  EXPECT_EQ(r.member_indices.size(), 20u);
}

TEST(HeavySubspace, Equivariance) {
  const PointSet s = testing::equality_instance(42);
  const auto v = RationalSubspace::full(s.dim());
  const auto base = find_heavy_subspace(s, v);
  std::vector<IntVec> scaled = s.points();
  for (std::size_t i = 0; i < scaled.size(); ++i)
    for (auto& e : scaled[i]) e *= static_cast<std::int64_t>(1 + i % 5);
  const auto r = find_heavy_subspace(PointSet(s.dim(), scaled), v);
  EXPECT_EQ(r.found, base.found);
  EXPECT_EQ(r.member_indices, base.member_indices);
}

TEST(Packing, LargeCoordinates) {
  // A plane with 40-bit basis vectors carrying 45 of 100 points of R^5.
  std::vector<IntVec> basis = testing::random_points(5, 2, std::int64_t{1} << 40, 21).points();
  auto rows = testing::points_in_span(basis, 45, 50, 22);
  const auto generic = testing::random_points(5, 55, std::int64_t{1} << 45, 23).points();
  rows.insert(rows.end(), generic.begin(), generic.end());
  const PointSet s(5, rows);
  const auto v = RationalSubspace::full(5);
  const auto r = find_heavy_subspace(s, v);
  ASSERT_TRUE(r.found);
  EXPECT_EQ(r.subspace.dim(), 2u);
  EXPECT_EQ(r.member_indices.size(), 45u);
  EXPECT_TRUE(is_heavy(s, v, r.subspace, true));

  // Same lines with per-point multipliers: identical answer.
  std::vector<IntVec> scaled = s.points();
  for (std::size_t i = 0; i < scaled.size(); ++i) {
    for (auto& e : scaled[i]) e *= static_cast<std::int64_t>(1 + i % 7);
  }
  const auto q = find_heavy_subspace(PointSet(5, scaled), v);
  EXPECT_EQ(q.member_indices, r.member_indices);
}

}  // namespace
}  // namespace fdc

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


#include "fdc/scaling.h"

#include <cmath>

#include <gtest/gtest.h>

#include "fdc/exact.h"
#include "fdc/harness.h"
#include "fdc/rng.h"
#include "support/test_support.h"

namespace fdc {
namespace {

using testing::points;
using testing::scaling_margin;

const PointSet& four_points() {
  static const PointSet s = points(2, {{1, 0}, {0, 1}, {1, 1}, {1, -1}});
  return s;
}

Subspace real_span(const PointSet& s) {
  return Subspace(RationalSubspace::span(s.points(), s.dim()).orthonormal_basis());
}

TEST(SeparationOracle, FindsMostNegativeDirection) {
  const auto v = separation_oracle(four_points(), Subspace::full(2), {{1, 1, 1, 1}, 0.0}, 0.0);
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->point_index, 2u);
  EXPECT_NEAR(v->witness[0], 1 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(v->witness[1], 1 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(v->violation_gap, 0.5, 1e-12);
}

TEST(SeparationOracle, AcceptsBalancedWeights) {
  EXPECT_FALSE(
      separation_oracle(four_points(), Subspace::full(2), {{2, 2, 1, 1}, 0.01}, 0.01));
  EXPECT_FALSE(separation_oracle(points(1, {{5}}), Subspace::full(1), {{3.5}, 0.0}, 0.0));
  EXPECT_FALSE(separation_oracle(points(1, {{5}}), Subspace::full(1), {{1.0}, 0.2}, 0.2));
}

TEST(SeparationOracle, ReportsViolationInsideSubspace) {
  // Points in the plane x3 = 0 of R^3; witness must lie in that plane.
  const PointSet s = points(3, {{1, 0, 0}, {0, 1, 0}, {1, 1, 0}});
  const auto v = separation_oracle(s, real_span(s), {{1, 1, 9}, 0.0}, 0.0);
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->point_index, 2u);
  EXPECT_NEAR(v->witness[2], 0.0, 1e-12);
  EXPECT_NEAR(norm2(v->witness), 1.0, 1e-12);
}

TEST(FixedPoint, SymmetricSetConvergesQuickly) {
  auto sol = fixed_point_scaling(make_scaling_problem(four_points(), Subspace::full(2)), 1e-3, 50);
  ASSERT_TRUE(sol.has_value());
  EXPECT_LT(sol->iterations, 50);
  const std::vector<double> want = {2, 2, 1, 1};
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(sol->weights.c_sq[i], want[i], 0.02);
  EXPECT_GE(scaling_margin(four_points(), sol->weights.c_sq, 1e-3), -1e-9);
}

TEST(FixedPoint, SinglePoint) {
  auto sol = fixed_point_scaling(make_scaling_problem(points(1, {{5}}), Subspace::full(1)), 1e-3, 5);
  ASSERT_TRUE(sol.has_value());
  EXPECT_EQ(sol->iterations, 1);
  EXPECT_EQ(sol->weights.c_sq, std::vector<double>{1.0});
}

TEST(FixedPoint, HeavyInputNeverCertifies) {
  const PointSet s = points(2, {{1, 0}, {1, 0}, {0, 1}});
  EXPECT_FALSE(fixed_point_scaling(s, Subspace::full(2), 1e-2, 2000).has_value());
}

TEST(SolveScaling, SymmetricSet) {
  const ScalingWeights c = solve_scaling_sdp(four_points(), Subspace::full(2), 1e-3);
  const std::vector<double> want = {2, 2, 1, 1};
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(c.c_sq[i] / want[i], 1.0, 0.01);
  EXPECT_DOUBLE_EQ(c.delta, 1e-3);
}

TEST(SolveScaling, SinglePoint) {
  EXPECT_EQ(solve_scaling_sdp(points(1, {{7}}), Subspace::full(1), 0.1).c_sq,
            std::vector<double>{1.0});
}

TEST(SolveScaling, HeavyInputIsInfeasible) {
  const PointSet s = points(2, {{1, 0}, {1, 0}, {0, 1}});
  try {
    solve_scaling_sdp(s, Subspace::full(2), 1e-2);
    FAIL();
  } catch (const InfeasibleError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInfeasible);
    ASSERT_TRUE(e.last_violation().has_value());
    EXPECT_GT(e.last_violation()->violation_gap, 0.0);
  }
}

TEST(SolveScaling, EllipsoidAloneCertifiesSymmetricSet) {
  ScalingOptions opt;
  opt.skip_fixed_point = true;
  const ScalingSolution sol =
      solve_scaling(make_scaling_problem(four_points(), Subspace::full(2)), 1e-2, opt);
  EXPECT_EQ(sol.solver, "ellipsoid");
  EXPECT_GE(scaling_margin(four_points(), sol.weights.c_sq, 1e-2), -1e-9);
  for (double c : sol.weights.c_sq) EXPECT_GE(c, 1.0);
}

TEST(SolveScaling, ScaleEquivariance) {
  const PointSet s = points(3, {{1, 0, 2}, {0, 3, 1}, {2, 1, 1}, {1, -1, 0}, {0, 1, -2}});
  std::vector<IntVec> doubled;
  for (const IntVec& x : s.points()) {
    IntVec y = x;
    for (auto& c : y) c *= 2;
    doubled.push_back(y);
  }
  const PointSet t(3, doubled);
  const auto a = solve_scaling(make_scaling_problem(s, Subspace::full(3)), 1e-3);
  const auto b = solve_scaling(make_scaling_problem(t, Subspace::full(3)), 1e-3);
  EXPECT_EQ(a.unit_weights, b.unit_weights);
  EXPECT_EQ(a.weights.c_sq, b.weights.c_sq);
  EXPECT_GE(scaling_margin(t, b.weights.c_sq, 1e-3), -1e-9);
  // Unnormalized, weights of 2x are a quarter of the weights of x.
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double xa = a.unit_weights[i] / dot(to_real(s[i]), to_real(s[i]));
    const double xb = b.unit_weights[i] / dot(to_real(t[i]), to_real(t[i]));
    EXPECT_NEAR(xb / xa, 0.25, 1e-12);
  }
}

TEST(SolveScaling, SubspaceInput) {
  // Five points in a plane of R^3 in general position within it.
  const PointSet s = points(3, {{1, 1, 0}, {1, 0, 1}, {2, 1, 1}, {0, 1, -1}, {3, 1, 2}});
  const ScalingWeights c = solve_scaling_sdp(s, real_span(s), 1e-3);
  EXPECT_GE(scaling_margin(s, c.c_sq, 1e-3), -1e-9);
}

// Instances without a heavy subspace (decided by brute force) always
// certify with the ellipsoid solver alone.
TEST(SolveScaling, EllipsoidCertifiesSmallFeasibleInstances) {
  int tried = 0;
  for (std::uint64_t seed = 1; tried < 40 && seed < 4000; ++seed) {
    CounterRng rng(seed, 90, 0);
    const std::size_t d = 2 + rng.below(2);
    const std::size_t n = d + rng.below(9 - d);
    const PointSet s = testing::random_points(d, n, 3, seed);
    if (exact_rank(s.points()) != static_cast<int>(d)) continue;
    if (brute_force_heavy_subspace(s, RationalSubspace::full(d)).found) continue;
    ++tried;
    ScalingOptions opt;
    opt.skip_fixed_point = true;
    const auto sol = solve_scaling(make_scaling_problem(s, Subspace::full(d)), 1e-2, opt);
    EXPECT_GE(scaling_margin(s, sol.weights.c_sq, 1e-2), -1e-9) << "seed " << seed;
    for (double c : sol.weights.c_sq) {
      EXPECT_GE(c, 1.0);
      EXPECT_LE(std::log(c), log_weight_bound(n, s.bit_complexity(), d));
    }
  }
  EXPECT_EQ(tried, 40);
}

TEST(SolveScaling, FixedPointAgreesWithIndependentCheck) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const PointSet s = testing::random_points(4, 40, 50, seed);
    const ScalingSolution sol = solve_scaling(make_scaling_problem(s, Subspace::full(4)), 1e-3);
    EXPECT_EQ(sol.solver, "fixed_point");
    EXPECT_GE(scaling_margin(s, sol.weights.c_sq, 1e-3), -1e-9) << "seed " << seed;
  }
}

TEST(SeparationOracle, RejectsBadInput) {
  EXPECT_THROW(separation_oracle(four_points(), Subspace::full(2), {{1, 1, 1}, 0.0}, 0.0), Error);
  EXPECT_THROW(separation_oracle(four_points(), Subspace::full(2), {{1, 0, 1, 1}, 0.0}, 0.0),
               Error);
}

}  // namespace
}  // namespace fdc

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


#ifndef FDC_TESTS_SUPPORT_TEST_SUPPORT_H_
#define FDC_TESTS_SUPPORT_TEST_SUPPORT_H_

#include <cstdint>
#include <vector>

#include "fdc/dataset.h"
#include "fdc/exact.h"
#include "fdc/linalg.h"

namespace fdc::testing {

PointSet points(std::size_t dim, std::vector<IntVec> rows);

// Random integer points with coordinates in [-range, range], nonzero.
PointSet random_points(std::size_t dim, std::size_t n, std::int64_t range,
                       std::uint64_t seed);

Matrix random_symmetric(std::size_t n, std::uint64_t seed);

// Small instance (d in [2,4], n in [1,12]) with coordinates in [-2,2], some
// with a planted low-dimensional subspace.
PointSet random_small_instance(std::uint64_t seed);

// d in [2,4], n = d m <= 12, exactly kappa m points generic inside a random
// kappa-dimensional subspace: meets the heaviness bound with equality.
PointSet equality_instance(std::uint64_t seed);

// Points generic inside the span of `basis` (integer combinations).
std::vector<IntVec> points_in_span(const std::vector<IntVec>& basis, std::size_t n,
                                   std::int64_t range, std::uint64_t seed);

// Smallest eigenvalue of a symmetric matrix by bisection on inertia counts
// (LDLᵀ in long double).
long double min_eigen_bisect(const std::vector<std::vector<long double>>& m);

// Smallest λ_min(((k+δ)/n) Σ c² y yᵀ - c²(x) x xᵀ) over x, divided by tr(Σ_c),
// from the raw integer points. k is the rank of S.
double scaling_margin(const PointSet& s, const std::vector<double>& c_sq, double delta);

}  // namespace fdc::testing

#endif  // FDC_TESTS_SUPPORT_TEST_SUPPORT_H_

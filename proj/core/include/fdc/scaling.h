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


#ifndef FDC_SCALING_H_
#define FDC_SCALING_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fdc/dataset.h"
#include "fdc/errors.h"
#include "fdc/linalg.h"

namespace fdc {

// Per-point weights c²(x), normalized so the smallest is 1.
struct ScalingWeights {
  std::vector<double> c_sq;
  double delta = 0.0;
};

struct ViolatedConstraint {
  std::size_t point_index = 0;
  Vector witness;        // unit vector in V (ambient coordinates)
  double violation_gap = 0.0;
};

class InfeasibleError : public Error {
 public:
  InfeasibleError(const std::string& what, std::optional<ViolatedConstraint> last)
      : Error(ErrorCode::kInfeasible, what), last_(std::move(last)) {}
  const std::optional<ViolatedConstraint>& last_violation() const { return last_; }

 private:
  std::optional<ViolatedConstraint> last_;
};

// Unit directions of the points in coordinates of an orthonormal basis of V,
// with the squared raw norms needed to convert weights back.
struct ScalingProblem {
  std::size_t k = 0;
  Matrix basis;               // d x k, orthonormal columns
  std::vector<Vector> dirs;   // unit k-vectors
  std::vector<double> norm_sq;
};

ScalingProblem make_scaling_problem(const PointSet& s, const Subspace& v);

// Weights on unit directions (w_i = c²(x_i) |x_i|²), min 1.
struct ScalingSolution {
  std::vector<double> unit_weights;
  ScalingWeights weights;
  std::string solver;  // "fixed_point" or "ellipsoid"
  long iterations = 0;
};

struct ScalingOptions {
  long max_fixed_point_iters = 20000;
  std::size_t ellipsoid_max_points = 24;
  double budget_scale = 1.0;
  bool skip_fixed_point = false;
};

// Checks M_x = ((k+δ)/n) Σ_y c²(y) y yᵀ - c²(x) x xᵀ ⪰ -tau I for every x.
// tau < 0 selects δ/(10k) tr(Σ_c). Returns the most negative M_x (ties to the
// smaller index) when some check fails.
std::optional<ViolatedConstraint> separation_oracle(const PointSet& s, const Subspace& v,
                                                    const ScalingWeights& c, double delta,
                                                    double tau = -1.0);
std::optional<ViolatedConstraint> separation_oracle(const ScalingProblem& p,
                                                    const std::vector<double>& unit_weights,
                                                    double delta, double tau = -1.0);

// Fixed-point iteration c² ← 1 / xᵀ Σ_c⁻¹ x; weights only when certified.
std::optional<ScalingSolution> fixed_point_scaling(const ScalingProblem& p, double delta,
                                                   long max_iters);
std::optional<ScalingWeights> fixed_point_scaling(const PointSet& s, const Subspace& v,
                                                  double delta, long max_iters);

// Ellipsoid method over c² with the separation oracle. Throws Infeasible.
ScalingSolution ellipsoid_scaling(const ScalingProblem& p, double delta,
                                  double budget_scale = 1.0);

// Fixed point first, ellipsoid fallback for small sets. Throws Infeasible.
ScalingSolution solve_scaling(const ScalingProblem& p, double delta,
                              const ScalingOptions& options = {});
ScalingWeights solve_scaling_sdp(const PointSet& s, const Subspace& v, double delta,
                                 const ScalingOptions& options = {});

// log of n^(8 b k), the bound on certified weights.
double log_weight_bound(std::size_t n, int bits, std::size_t k);

// Relative tolerance of the final certification pass.
inline constexpr double kCertifyTolerance = 1e-10;

}  // namespace fdc

#endif  // FDC_SCALING_H_

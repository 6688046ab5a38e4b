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

#include <algorithm>
#include <cmath>
#include <limits>

#include "fdc/ellipsoid.h"
#include "fdc/exact.h"

namespace fdc {
namespace {

struct Violation {
  std::size_t index = 0;
  Vector local;  // unit witness in basis coordinates
  double lambda = 0.0;
};

Matrix weighted_moment(const ScalingProblem& p, const std::vector<double>& w) {
  Matrix s(p.k, p.k);
  for (std::size_t i = 0; i < p.dirs.size(); ++i) add_outer(s, p.dirs[i], w[i]);
  s *= 1.0 / static_cast<double>(p.dirs.size());
  return s;
}

std::optional<Violation> find_violation(const ScalingProblem& p, const std::vector<double>& w,
                                        double delta, double tau, double* trace_out) {
  const std::size_t m = p.dirs.size();
  Matrix sigma = weighted_moment(p, w);
  const double tr = sigma.trace();
  if (trace_out) *trace_out = tr;
  if (tau < 0.0) tau = delta / (10.0 * static_cast<double>(p.k)) * tr;
  Matrix kmat = sigma * (static_cast<double>(p.k) + delta);
  Matrix lower;
  const bool factored = cholesky(kmat, lower);
  std::optional<Violation> best;
  const double tie = 1e-12 * std::max(tr, std::numeric_limits<double>::min());
  Vector z(p.k);
  for (std::size_t i = 0; i < m; ++i) {
    if (factored) {
      z = p.dirs[i];
      forward_substitute(lower, z);
      const double t = w[i] * dot(z, z);
      if (t <= 1.0 - 1e-12) continue;
    }
    Matrix mi = kmat;
    add_outer(mi, p.dirs[i], -w[i]);
    SymmetricEigen eig = sym_eigen(mi);
    const double lam = eig.values.back();
    if (lam >= -tau) continue;
    if (!best || lam < best->lambda - tie) {
      best = Violation{i, eig.vectors.column(p.k - 1), lam};
    }
  }
  return best;
}

ViolatedConstraint to_public(const ScalingProblem& p, const Violation& v) {
  ViolatedConstraint out;
  out.point_index = v.index;
  out.witness = normalized(p.basis * v.local);
  for (double x : out.witness) {
    if (std::abs(x) > 1e-12) {
      if (x < 0.0) {
        for (double& y : out.witness) y = -y;
      }
      break;
    }
  }
  out.violation_gap = -v.lambda;
  return out;
}

std::vector<double> min_normalized(std::vector<double> w) {
  const double lo = *std::min_element(w.begin(), w.end());
  for (double& x : w) x /= lo;
  return w;
}

ScalingSolution finish(const ScalingProblem& p, std::vector<double> unit, double delta,
                       std::string solver, long iterations) {
  ScalingSolution s;
  s.unit_weights = min_normalized(std::move(unit));
  std::vector<double> raw(p.dirs.size());
  for (std::size_t i = 0; i < raw.size(); ++i) raw[i] = s.unit_weights[i] / p.norm_sq[i];
  s.weights.c_sq = min_normalized(std::move(raw));
  s.weights.delta = delta;
  s.solver = std::move(solver);
  s.iterations = iterations;
  return s;
}

bool certified(const ScalingProblem& p, const std::vector<double>& w, double delta) {
  const double tr = weighted_moment(p, w).trace();
  return !find_violation(p, w, delta, kCertifyTolerance * tr, nullptr);
}

void check_problem(const ScalingProblem& p) {
  if (p.dirs.empty()) throw Error(ErrorCode::kEmptyInput, "no points in scaling problem");
  if (p.k == 0) throw Error(ErrorCode::kInvalidArgument, "zero-dimensional subspace");
}

}  // namespace

ScalingProblem make_scaling_problem(const PointSet& s, const Subspace& v) {
  if (s.empty()) throw Error(ErrorCode::kEmptyInput, "no points");
  if (v.ambient_dim() != s.dim()) {
    throw Error(ErrorCode::kInvalidArgument, "subspace and points differ in dimension");
  }
  ScalingProblem p;
  p.k = v.dim();
  p.basis = v.basis();
  for (std::size_t i = 0; i < s.size(); ++i) {
    const Vector x = to_real(s[i]);
    Vector u = unit_direction(s[i]);
    Vector y = v.coordinates(u);
    const double ny = norm2(y);
    if (ny < 1.0 - 1e-6) {
      throw Error(ErrorCode::kInvalidArgument, "point outside the subspace");
    }
    for (double& c : y) c /= ny;
    p.dirs.push_back(std::move(y));
    p.norm_sq.push_back(dot(x, x));
  }
  return p;
}

std::optional<ViolatedConstraint> separation_oracle(const ScalingProblem& p,
                                                    const std::vector<double>& unit_weights,
                                                    double delta, double tau) {
  check_problem(p);
  if (unit_weights.size() != p.dirs.size()) {
    throw Error(ErrorCode::kInvalidArgument, "weight count mismatch");
  }
  if (delta < 0.0) throw Error(ErrorCode::kInvalidArgument, "negative delta");
  auto v = find_violation(p, unit_weights, delta, tau, nullptr);
  if (!v) return std::nullopt;
  return to_public(p, *v);
}

std::optional<ViolatedConstraint> separation_oracle(const PointSet& s, const Subspace& v,
                                                    const ScalingWeights& c, double delta,
                                                    double tau) {
  ScalingProblem p = make_scaling_problem(s, v);
  if (c.c_sq.size() != p.dirs.size()) {
    throw Error(ErrorCode::kInvalidArgument, "weight count mismatch");
  }
  std::vector<double> w(p.dirs.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!(c.c_sq[i] > 0.0)) throw Error(ErrorCode::kInvalidArgument, "weights must be positive");
    w[i] = c.c_sq[i] * p.norm_sq[i];
  }
  return separation_oracle(p, w, delta, tau);
}

std::optional<ScalingSolution> fixed_point_scaling(const ScalingProblem& p, double delta,
                                                   long max_iters) {
  check_problem(p);
  const std::size_t m = p.dirs.size();
  const double k = static_cast<double>(p.k);
  const double accept = k + std::max(0.5 * delta, 1e-12 * k);
  std::vector<double> w(m, 1.0), q(m);
  Matrix lower;
  Vector z(p.k);
  for (long it = 1; it <= max_iters; ++it) {
    Matrix sigma = weighted_moment(p, w);
    if (!cholesky(sigma, lower)) return std::nullopt;
    double rho_max = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      z = p.dirs[i];
      forward_substitute(lower, z);
      q[i] = dot(z, z);
      rho_max = std::max(rho_max, w[i] * q[i]);
    }
    if (rho_max <= accept && certified(p, w, delta)) {
      return finish(p, w, delta, "fixed_point", it);
    }
    for (std::size_t i = 0; i < m; ++i) w[i] = 1.0 / q[i];
    w = min_normalized(std::move(w));
    const double hi = *std::max_element(w.begin(), w.end());
    if (!std::isfinite(hi) || hi > 1e250) return std::nullopt;
  }
  return std::nullopt;
}

std::optional<ScalingWeights> fixed_point_scaling(const PointSet& s, const Subspace& v,
                                                  double delta, long max_iters) {
  auto sol = fixed_point_scaling(make_scaling_problem(s, v), delta, max_iters);
  if (!sol) return std::nullopt;
  return sol->weights;
}

ScalingSolution ellipsoid_scaling(const ScalingProblem& p, double delta, double budget_scale) {
  check_problem(p);
  if (!(delta > 0.0)) throw Error(ErrorCode::kInvalidArgument, "delta must be positive");
  const std::size_t m = p.dirs.size();
  const double k = static_cast<double>(p.k);
  const double md = static_cast<double>(m);
  const double inner = 0.5 * delta;
  constexpr double kRadius = 1e8;
  const double log_floor = md * std::log(delta / (2.0 * k));
  const long budget = static_cast<long>(
      budget_scale * (10.0 * (md + 1.0) * md * (std::log(kRadius) - std::log(delta / (2.0 * k))) +
                      1000.0));
  Ellipsoid e(Vector(m, 1.0), kRadius);
  std::optional<ViolatedConstraint> last;
  Vector a(m);
  for (long it = 1; it <= budget; ++it) {
    const Vector& c = e.center();
    double cut_b = 0.0;
    std::fill(a.begin(), a.end(), 0.0);
    auto low = std::find_if(c.begin(), c.end(), [](double x) { return x < 1.0; });
    if (low != c.end()) {
      a[static_cast<std::size_t>(low - c.begin())] = -1.0;
      cut_b = -1.0;
    } else {
      auto v = find_violation(p, c, inner, 0.0, nullptr);
      if (!v) {
        if (certified(p, c, delta)) return finish(p, c, delta, "ellipsoid", it);
        v = find_violation(p, c, delta, 0.0, nullptr);
        if (!v) return finish(p, c, delta, "ellipsoid", it);
      }
      last = to_public(p, *v);
      const double scale = (k + inner) / md;
      for (std::size_t j = 0; j < m; ++j) {
        const double t = dot(v->local, p.dirs[j]);
        a[j] = -scale * t * t;
      }
      const double ti = dot(v->local, p.dirs[v->index]);
      a[v->index] += ti * ti;
    }
    auto r = e.cut(a, cut_b);
    if (r != Ellipsoid::CutResult::kReduced) {
      throw InfeasibleError("no scaling exists (ellipsoid emptied)", last);
    }
    if (e.log_volume() < log_floor) {
      throw InfeasibleError("no scaling exists (volume below threshold)", last);
    }
  }
  throw InfeasibleError("no scaling found within the iteration budget", last);
}

ScalingSolution solve_scaling(const ScalingProblem& p, double delta,
                              const ScalingOptions& options) {
  check_problem(p);
  if (!(delta > 0.0)) throw Error(ErrorCode::kInvalidArgument, "delta must be positive");
  if (!options.skip_fixed_point) {
    auto sol = fixed_point_scaling(p, delta, options.max_fixed_point_iters);
    if (sol) return *std::move(sol);
  }
  if (p.dirs.size() <= options.ellipsoid_max_points) {
    return ellipsoid_scaling(p, delta, options.budget_scale);
  }
  std::vector<double> w(p.dirs.size(), 1.0);
  auto v = find_violation(p, w, delta, -1.0, nullptr);
  throw InfeasibleError("fixed point did not converge and the set is too large for the "
                        "ellipsoid fallback",
                        v ? std::optional<ViolatedConstraint>(to_public(p, *v)) : std::nullopt);
}

ScalingWeights solve_scaling_sdp(const PointSet& s, const Subspace& v, double delta,
                                 const ScalingOptions& options) {
  return solve_scaling(make_scaling_problem(s, v), delta, options).weights;
}

double log_weight_bound(std::size_t n, int bits, std::size_t k) {
  return 8.0 * bits * static_cast<double>(k) * std::log(static_cast<double>(std::max<std::size_t>(n, 2)));
}

}  // namespace fdc

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


#include "fdc/forster.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

#include "fdc/errors.h"

namespace fdc {
namespace {

constexpr double kWindowSlack = 1e-8;

bool in_window(const Certificate& c, std::size_t k) {
  const double kd = static_cast<double>(k);
  return c.lambda_min >= 1.0 / (kd + c.delta) - kWindowSlack &&
         c.lambda_max <= (1.0 + c.delta) / (kd + c.delta) + kWindowSlack;
}

Matrix mapped_moment(const ForsterPiece& piece, const std::vector<Vector>& dirs) {
  const std::size_t k = piece.dim();
  Matrix m(k, k);
  for (const Vector& y : dirs) add_outer(m, radial_map(piece.transform, y), 1.0);
  m *= 1.0 / static_cast<double>(dirs.size());
  return m;
}

ForsterPiece build_piece(const PointSet& sub, const RationalSubspace& v,
                         std::vector<std::size_t> members, double delta, double solve_delta,
                         const ScalingOptions& scaling) {
  ForsterPiece piece;
  piece.member_indices = std::move(members);
  piece.subspace = v;
  piece.basis = v.orthonormal_basis();
  const ScalingProblem p = make_scaling_problem(sub, Subspace(piece.basis));
  ScalingSolution sol = solve_scaling(p, solve_delta, scaling);
  const std::size_t k = p.k;
  Matrix sigma(k, k);
  for (std::size_t i = 0; i < p.dirs.size(); ++i) add_outer(sigma, p.dirs[i], sol.unit_weights[i]);
  sigma *= 1.0 / static_cast<double>(p.dirs.size());
  piece.transform = inv_sqrt_psd(sigma, 1e-14 * sigma.trace());
  piece.weights = std::move(sol.weights);
  piece.solver = std::move(sol.solver);
  const SymmetricEigen e = sym_eigen(mapped_moment(piece, p.dirs));
  piece.certificate = {e.values.back(), e.values.front(), delta};
  return piece;
}

}  // namespace

Vector radial_map(const Matrix& a, std::span<const double> x) {
  if (a.rows() != a.cols() || a.cols() != x.size()) {
    throw Error(ErrorCode::kInvalidArgument, "transform and point differ in dimension");
  }
  if (norm2(x) == 0.0) throw Error(ErrorCode::kZeroPoint, "radial map of the zero vector");
  Vector y = a * x;
  const double n = norm2(y);
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw Error(ErrorCode::kSingularTransform, "transform maps the point to zero");
  }
  for (double& c : y) c /= n;
  return y;
}

Vector ForsterPiece::map(std::span<const double> x) const {
  return radial_map(transform, transpose_times(basis, normalized(x)));
}

Vector ForsterPiece::map(const IntVec& x) const {
  return radial_map(transform, transpose_times(basis, unit_direction(x)));
}

ForsterPiece forster_transform(const PointSet& s, double delta, const ForsterOptions& options) {
  if (s.empty()) throw Error(ErrorCode::kEmptyInput, "no points");
  if (!(delta > 0.0) || !(delta < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "delta must lie in (0,1)");
  }
  RationalSubspace v = RationalSubspace::span(s.points(), s.dim());
  std::vector<std::size_t> members(s.size());
  std::iota(members.begin(), members.end(), 0);
  PointSet sub = s;
  while (v.dim() > 1) {
    HeavySubspaceResult r = find_heavy_subspace(sub, v, options.heavy);
    if (!r.found) break;
    std::vector<std::size_t> next;
    next.reserve(r.member_indices.size());
    for (std::size_t j : r.member_indices) next.push_back(members[j]);
    members = std::move(next);
    v = std::move(r.subspace);
    sub = s.subset(members);
  }

  std::optional<ForsterPiece> piece;
  try {
    piece = build_piece(sub, v, members, delta, delta, options.scaling);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kInvalidArgument) throw;
  }
  if (piece && in_window(piece->certificate, piece->dim())) return *std::move(piece);

  ScalingOptions retry = options.scaling;
  retry.max_fixed_point_iters *= 2;
  retry.budget_scale *= 2.0;
  piece = build_piece(sub, v, members, delta, 0.5 * delta, retry);
  if (!in_window(piece->certificate, piece->dim())) {
    throw Error(ErrorCode::kInternalInvariantViolated,
                "certificate outside the eigenvalue window after retry");
  }
  return *std::move(piece);
}

std::size_t max_piece_count(std::size_t d, std::size_t n) {
  const double l = std::ceil(std::log(static_cast<double>(std::max<std::size_t>(n, 1))));
  return d * (static_cast<std::size_t>(l) + 1);
}

ForsterDecomposition forster_decompose(const PointSet& s, double delta,
                                       const ForsterOptions& options) {
  if (s.empty()) throw Error(ErrorCode::kEmptyInput, "no points");
  ForsterDecomposition out;
  out.source = s;
  std::vector<std::size_t> residual(s.size());
  std::iota(residual.begin(), residual.end(), 0);
  const std::size_t cap = max_piece_count(s.dim(), s.size());
  while (!residual.empty()) {
    const PointSet r = s.subset(residual);
    ForsterPiece piece = forster_transform(r, delta, options);
    const std::size_t rank = static_cast<std::size_t>(exact_rank(r.points()));
    if (piece.member_indices.size() * rank < piece.dim() * r.size()) {
      throw Error(ErrorCode::kInternalInvariantViolated, "piece below its fraction guarantee");
    }
    std::vector<bool> taken(residual.size(), false);
    for (std::size_t& j : piece.member_indices) {
      taken[j] = true;
      j = residual[j];
    }
    std::vector<std::size_t> rest;
    for (std::size_t j = 0; j < residual.size(); ++j) {
      if (!taken[j]) rest.push_back(residual[j]);
    }
    residual = std::move(rest);
    out.pieces.push_back(std::move(piece));
    if (out.pieces.size() > cap) {
      throw Error(ErrorCode::kInternalInvariantViolated, "too many pieces");
    }
  }
  return out;
}

PieceReport verify_piece(const ForsterPiece& piece, const PointSet& s) {
  PieceReport rep;
  const std::size_t k = piece.dim();
  if (k == 0 || piece.member_indices.empty() || piece.transform.rows() != k) {
    rep.pass = false;
    return rep;
  }
  Matrix m(k, k);
  for (std::size_t i : piece.member_indices) {
    const IntVec& x = s[i];
    if (!piece.subspace.contains(x)) rep.members_in_subspace = false;
    try {
      add_outer(m, piece.map(x), 1.0);
    } catch (const Error&) {
      rep.pass = false;
      rep.distance = INFINITY;
      return rep;
    }
  }
  m *= 1.0 / static_cast<double>(piece.member_indices.size());
  rep.trace = m.trace();
  const SymmetricEigen e = sym_eigen(m);
  rep.lambda_min = e.values.back();
  rep.lambda_max = e.values.front();
  const double iso = 1.0 / static_cast<double>(k);
  rep.distance = std::max(std::abs(rep.lambda_max - iso), std::abs(rep.lambda_min - iso));
  rep.pass = rep.distance <= piece.certificate.delta + 1e-8;
  return rep;
}

bool is_partition(const ForsterDecomposition& d) {
  std::vector<int> seen(d.source.size(), 0);
  for (const ForsterPiece& p : d.pieces) {
    for (std::size_t i : p.member_indices) {
      if (i >= seen.size() || seen[i]++) return false;
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; });
}

}  // namespace fdc

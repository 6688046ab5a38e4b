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


#include "fdc/ellipsoid.h"

#include <cmath>

#include "fdc/errors.h"

namespace fdc {

double log_unit_ball_volume(std::size_t n) {
  const double h = 0.5 * static_cast<double>(n);
  return h * std::log(M_PI) - std::lgamma(h + 1.0);
}

Ellipsoid::Ellipsoid(Vector center, double radius)
    : center_(std::move(center)),
      shape_(Matrix::identity(center_.size()) * (radius * radius)),
      log_det_(static_cast<double>(center_.size()) * 2.0 * std::log(radius)) {
  if (center_.empty() || !(radius > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "bad ellipsoid");
  }
}

double Ellipsoid::log_volume() const {
  return 0.5 * log_det_ + log_unit_ball_volume(dim());
}

Ellipsoid::CutResult Ellipsoid::cut(std::span<const double> a, double b) {
  const std::size_t n = dim();
  bool zero = true;
  for (double v : a) zero = zero && v == 0.0;
  if (zero) return b >= 0.0 ? CutResult::kReduced : CutResult::kEmpty;
  const Vector pa = shape_ * a;
  const double apa = dot(a, pa);
  if (!(apa > 0.0) || !std::isfinite(apa)) return CutResult::kDegenerate;
  const double s = std::sqrt(apa);
  const double alpha = (dot(a, center_) - b) / s;
  if (alpha >= 1.0) return CutResult::kEmpty;
  const double nd = static_cast<double>(n);
  if (alpha <= -1.0 / nd) return CutResult::kReduced;
  if (n == 1) {
    // Interval [c - r, c + r] intersected with the halfspace.
    const double r = std::sqrt(shape_(0, 0));
    const double c = center_[0];
    double lo = c - r;
    double hi = c + r;
    const double t = b / a[0];
    if (a[0] > 0) hi = std::min(hi, t);
    else lo = std::max(lo, t);
    if (!(hi > lo)) return CutResult::kEmpty;
    center_[0] = 0.5 * (lo + hi);
    const double nr = 0.5 * (hi - lo);
    shape_(0, 0) = nr * nr;
    log_det_ = 2.0 * std::log(nr);
    return CutResult::kReduced;
  }
  const double tau = (1.0 + nd * alpha) / (nd + 1.0);
  const double sigma = 2.0 * (1.0 + nd * alpha) / ((nd + 1.0) * (1.0 + alpha));
  const double delta = nd * nd * (1.0 - alpha * alpha) / (nd * nd - 1.0);
  for (std::size_t i = 0; i < n; ++i) center_[i] -= tau * pa[i] / s;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double v = delta * (shape_(i, j) - sigma * pa[i] * pa[j] / apa);
      shape_(i, j) = v;
      shape_(j, i) = v;
    }
  }
  log_det_ += nd * std::log(delta) + std::log1p(-sigma);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(shape_(i, i) > 0.0)) return CutResult::kDegenerate;
  }
  return CutResult::kReduced;
}

}  // namespace fdc

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


#ifndef FDC_ELLIPSOID_H_
#define FDC_ELLIPSOID_H_

#include <cstddef>
#include <span>

#include "fdc/linalg.h"

namespace fdc {

// E = { x : (x - c)ᵀ P⁻¹ (x - c) <= 1 } with deep-cut updates.
class Ellipsoid {
 public:
  Ellipsoid(Vector center, double radius);

  enum class CutResult {
    kReduced,
    kEmpty,       // the kept halfspace misses E
    kDegenerate,  // shape matrix lost definiteness numerically
  };

  // Keeps E ∩ { x : a·x <= b }, replaced by its minimum-volume enclosing
  // ellipsoid.
  CutResult cut(std::span<const double> a, double b);

  const Vector& center() const { return center_; }
  std::size_t dim() const { return center_.size(); }
  double log_volume() const;
  const Matrix& shape() const { return shape_; }

 private:
  Vector center_;
  Matrix shape_;
  double log_det_ = 0.0;
};

double log_unit_ball_volume(std::size_t n);

}  // namespace fdc

#endif  // FDC_ELLIPSOID_H_

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


#ifndef FDC_FORSTER_H_
#define FDC_FORSTER_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "fdc/dataset.h"
#include "fdc/exact.h"
#include "fdc/heavy_subspace.h"
#include "fdc/linalg.h"
#include "fdc/scaling.h"

namespace fdc {

struct Certificate {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double delta = 0.0;
};

// A subspace V with a transform A that puts the points of S in V in
// approximate radial isotropic position.
struct ForsterPiece {
  std::vector<std::size_t> member_indices;  // 0-based, into the parent set
  RationalSubspace subspace;
  Matrix basis;      // d x k orthonormal basis of V
  Matrix transform;  // k x k, in basis coordinates
  ScalingWeights weights;
  Certificate certificate;
  std::string solver;

  std::size_t dim() const { return basis.cols(); }
  // f_A(x) in basis coordinates; x is projected onto V first.
  Vector map(const IntVec& x) const;
  Vector map(std::span<const double> x) const;
};

struct ForsterDecomposition {
  std::vector<ForsterPiece> pieces;
  PointSet source;
};

struct ForsterOptions {
  HeavySubspaceOptions heavy;
  ScalingOptions scaling;
};

// Ax / |Ax|. Throws ZeroPoint or SingularTransform.
Vector radial_map(const Matrix& a, std::span<const double> x);

ForsterPiece forster_transform(const PointSet& s, double delta,
                               const ForsterOptions& options = {});

ForsterDecomposition forster_decompose(const PointSet& s, double delta,
                                       const ForsterOptions& options = {});

// d (ceil(ln n) + 1)
std::size_t max_piece_count(std::size_t d, std::size_t n);

struct PieceReport {
  double trace = 0.0;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double distance = 0.0;  // |M - I/k| in spectral norm
  bool members_in_subspace = true;
  bool pass = false;
};

PieceReport verify_piece(const ForsterPiece& piece, const PointSet& s);

// Sorted, disjoint and covering 0..n-1.
bool is_partition(const ForsterDecomposition& d);

}  // namespace fdc

#endif  // FDC_FORSTER_H_

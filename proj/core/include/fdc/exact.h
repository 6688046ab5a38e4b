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


#ifndef FDC_EXACT_H_
#define FDC_EXACT_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "fdc/linalg.h"

namespace fdc {

using IntVec = std::vector<std::int64_t>;

// Number of bits of |v| (0 for v == 0).
int bit_length(std::int64_t v);
int max_bit_length(const IntVec& x);

// x divided by the gcd of its entries.
IntVec primitive(const IntVec& x);
// Primitive vector with its first nonzero entry positive; equal for x and y
// exactly when they span the same line.
IntVec line_key(const IntVec& x);

Vector to_real(const IntVec& x);
// x / |x| computed in floating point; exact under scaling by powers of two.
Vector unit_direction(const IntVec& x);

int exact_rank(const std::vector<IntVec>& vectors);
bool exact_in_span(const std::vector<IntVec>& set, const IntVec& x);

namespace detail {
struct BigRows;
}

// A linear subspace of Q^d represented exactly: a basis of primitive integer
// vectors and an integer annihilator whose null space is the subspace.
class RationalSubspace {
 public:
  RationalSubspace() = default;

  static RationalSubspace full(std::size_t d);
  // Span of the given vectors; the basis is the greedy independent prefix.
  static RationalSubspace span(const std::vector<IntVec>& vectors,
                               std::size_t ambient_dim);

  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t dim() const { return basis_.size(); }
  bool is_full() const { return dim() == ambient_dim_; }
  const std::vector<IntVec>& basis() const { return basis_; }
  // Coordinates on which projection of the subspace is injective.
  const std::vector<std::size_t>& chart() const { return chart_; }

  bool contains(const IntVec& x) const;
  bool contains(const RationalSubspace& other) const;
  bool operator==(const RationalSubspace& other) const;

  // x restricted to chart(); determines x uniquely for x in the subspace.
  IntVec chart_coordinates(const IntVec& x) const;
  // Orthonormal basis (Householder QR of the integer basis).
  Matrix orthonormal_basis() const;

 private:
  void rebuild();

  std::size_t ambient_dim_ = 0;
  std::vector<IntVec> basis_;
  std::vector<std::size_t> chart_;
  std::vector<IntVec> annihilator_small_;  // valid when fits_small_
  bool fits_small_ = true;
  int annihilator_bits_ = 0;
  std::shared_ptr<const detail::BigRows> annihilator_big_;
};

}  // namespace fdc

#endif  // FDC_EXACT_H_

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


// Multiprecision helpers shared by the exact modules. Not installed.

#ifndef FDC_SRC_BIGINT_H_
#define FDC_SRC_BIGINT_H_

#include <gmpxx.h>

#include <cstddef>
#include <vector>

#include "fdc/exact.h"

namespace fdc::detail {

using BigVec = std::vector<mpz_class>;

struct BigRows {
  std::vector<BigVec> rows;
};

BigVec to_big(const IntVec& x);
void make_primitive(BigVec& v);

// Rank by fraction-free (Bareiss) elimination.
int rank_bareiss(std::vector<BigVec> rows);
mpz_class det_bareiss(std::vector<BigVec> m);

// Primitive integer rows spanning the right null space of `rows`; `pivots`
// receives the pivot columns of the row echelon form.
std::vector<BigVec> integer_nullspace(const std::vector<IntVec>& rows,
                                      std::size_t cols,
                                      std::vector<std::size_t>* pivots);

// Rows of M^{-1} for the square matrix whose columns are `columns`, each
// scaled to a primitive integer vector. Row t annihilates x exactly when the
// t-th coordinate of x in that basis vanishes.
std::vector<BigVec> scaled_inverse_rows(const std::vector<IntVec>& columns);

bool dot_is_zero(const BigVec& a, const IntVec& x);

// Integer row echelon form grown one vector at a time; rows are kept
// primitive.
class Echelon {
 public:
  std::size_t rank() const { return rows_.size(); }
  bool contains(const IntVec& x) const;
  // Adds x unless it is already spanned; returns whether it was added.
  bool add(const IntVec& x);

 private:
  BigVec reduce(const IntVec& x) const;

  std::vector<BigVec> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace fdc::detail

#endif  // FDC_SRC_BIGINT_H_

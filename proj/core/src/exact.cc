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


#include "fdc/exact.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <utility>

#include "bigint.h"
#include "fdc/errors.h"

namespace fdc {

namespace detail {

BigVec to_big(const IntVec& x) {
  BigVec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = mpz_class(static_cast<signed long>(x[i]));
  }
  return out;
}

void make_primitive(BigVec& v) {
  mpz_class g = 0;
  for (const mpz_class& e : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.get_mpz_t());
  if (g == 0 || g == 1) return;
  for (mpz_class& e : v) mpz_divexact(e.get_mpz_t(), e.get_mpz_t(), g.get_mpz_t());
}

int rank_bareiss(std::vector<BigVec> a) {
  if (a.empty()) return 0;
  const std::size_t m = a.size();
  const std::size_t n = a[0].size();
  mpz_class prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t p = r;
    while (p < m && a[p][c] == 0) ++p;
    if (p == m) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < m; ++i) {
      for (std::size_t j = c + 1; j < n; ++j) {
        a[i][j] = a[r][c] * a[i][j] - a[i][c] * a[r][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return static_cast<int>(r);
}

mpz_class det_bareiss(std::vector<BigVec> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a[p][k] == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      std::swap(a[p], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = a[k][k] * a[i][j] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

namespace {

// Reduced row echelon form over Q.
std::vector<std::vector<mpq_class>> rref(const std::vector<IntVec>& rows,
                                         std::size_t cols,
                                         std::vector<std::size_t>& pivots) {
  std::vector<std::vector<mpq_class>> a(rows.size(), std::vector<mpq_class>(cols));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j)
      a[i][j] = mpq_class(static_cast<signed long>(rows[i][j]));
  pivots.clear();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    const mpq_class inv = 1 / a[r][c];
    for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      const mpq_class f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  a.resize(r);
  return a;
}

BigVec scale_to_integers(const std::vector<mpq_class>& q) {
  mpz_class l = 1;
  for (const mpq_class& e : q) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), e.get_den_mpz_t());
  }
  BigVec out(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    out[i] = q[i].get_num() * (l / q[i].get_den());
  }
  make_primitive(out);
  return out;
}

}  // namespace

BigVec Echelon::reduce(const IntVec& x) const {
  BigVec v = to_big(x);
  mpz_class g, a, b, t;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const std::size_t p = pivots_[i];
    if (v[p] == 0) continue;
    const BigVec& row = rows_[i];
    mpz_gcd(g.get_mpz_t(), row[p].get_mpz_t(), v[p].get_mpz_t());
    mpz_divexact(a.get_mpz_t(), row[p].get_mpz_t(), g.get_mpz_t());
    mpz_divexact(b.get_mpz_t(), v[p].get_mpz_t(), g.get_mpz_t());
    for (std::size_t j = 0; j < v.size(); ++j) {
      t = a * v[j];
      mpz_submul(t.get_mpz_t(), b.get_mpz_t(), row[j].get_mpz_t());
      v[j] = t;
    }
    make_primitive(v);
  }
  return v;
}

bool Echelon::contains(const IntVec& x) const {
  const BigVec v = reduce(x);
  return std::all_of(v.begin(), v.end(), [](const mpz_class& e) { return e == 0; });
}

bool Echelon::add(const IntVec& x) {
  BigVec v = reduce(x);
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (v[j] != 0) {
      rows_.push_back(std::move(v));
      pivots_.push_back(j);
      return true;
    }
  }
  return false;
}

std::vector<BigVec> integer_nullspace(const std::vector<IntVec>& rows,
                                      std::size_t cols,
                                      std::vector<std::size_t>* pivots) {
  std::vector<std::size_t> piv;
  const auto r = rref(rows, cols, piv);
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t p : piv) is_pivot[p] = true;
  std::vector<BigVec> out;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<mpq_class> v(cols, mpq_class(0));
    v[f] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -r[i][f];
    out.push_back(scale_to_integers(v));
  }
  if (pivots) *pivots = std::move(piv);
  return out;
}

std::vector<BigVec> scaled_inverse_rows(const std::vector<IntVec>& columns) {
  const std::size_t k = columns.size();
  // Augmented [M | I] with M's columns given.
  std::vector<IntVec> aug(k, IntVec(2 * k, 0));
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < k; ++i) aug[i][j] = columns[j][i];
  for (std::size_t i = 0; i < k; ++i) aug[i][k + i] = 1;
  std::vector<std::size_t> piv;
  const auto r = rref(aug, 2 * k, piv);
  if (piv.size() < k || piv[k - 1] != k - 1) {
    throw Error(ErrorCode::kInternalInvariantViolated, "singular base matrix");
  }
  std::vector<BigVec> out(k);
  for (std::size_t t = 0; t < k; ++t) {
    std::vector<mpq_class> row(r[t].begin() + k, r[t].end());
    out[t] = scale_to_integers(row);
  }
  return out;
}

bool dot_is_zero(const BigVec& a, const IntVec& x) {
  mpz_class s = 0;
  mpz_class xi;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (x[i] == 0) continue;
    xi = static_cast<signed long>(x[i]);
    mpz_addmul(s.get_mpz_t(), a[i].get_mpz_t(), xi.get_mpz_t());
  }
  return s == 0;
}

}  // namespace detail

int bit_length(std::int64_t v) {
  const std::uint64_t u = v < 0 ? static_cast<std::uint64_t>(0) - static_cast<std::uint64_t>(v)
                                : static_cast<std::uint64_t>(v);
  return u == 0 ? 0 : 64 - __builtin_clzll(u);
}

int max_bit_length(const IntVec& x) {
  int b = 0;
  for (std::int64_t v : x) b = std::max(b, bit_length(v));
  return b;
}

IntVec primitive(const IntVec& x) {
  std::uint64_t g = 0;
  for (std::int64_t v : x) {
    const std::uint64_t a = v < 0 ? static_cast<std::uint64_t>(0) - static_cast<std::uint64_t>(v)
                                  : static_cast<std::uint64_t>(v);
    g = std::gcd(g, a);
  }
  IntVec out = x;
  if (g > 1) {
    for (std::int64_t& v : out) v /= static_cast<std::int64_t>(g);
  }
  return out;
}

IntVec line_key(const IntVec& x) {
  IntVec p = primitive(x);
  for (std::int64_t v : p) {
    if (v == 0) continue;
    if (v < 0) {
      for (std::int64_t& e : p) e = -e;
    }
    break;
  }
  return p;
}

Vector to_real(const IntVec& x) {
  Vector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = static_cast<double>(x[i]);
  return out;
}

Vector unit_direction(const IntVec& x) {
  Vector v = to_real(x);
  double s = 0.0;
  for (double e : v) s += e * e;
  const double n = std::sqrt(s);
  for (double& e : v) e /= n;
  return v;
}

int exact_rank(const std::vector<IntVec>& vectors) {
  if (vectors.empty()) return 0;
  std::vector<detail::BigVec> rows;
  rows.reserve(vectors.size());
  for (const IntVec& v : vectors) rows.push_back(detail::to_big(v));
  return detail::rank_bareiss(std::move(rows));
}

bool exact_in_span(const std::vector<IntVec>& set, const IntVec& x) {
  std::vector<IntVec> with = set;
  with.push_back(x);
  return exact_rank(with) == exact_rank(set);
}

RationalSubspace RationalSubspace::full(std::size_t d) {
  RationalSubspace s;
  s.ambient_dim_ = d;
  for (std::size_t i = 0; i < d; ++i) {
    IntVec e(d, 0);
    e[i] = 1;
    s.basis_.push_back(e);
  }
  s.rebuild();
  return s;
}

RationalSubspace RationalSubspace::span(const std::vector<IntVec>& vectors,
                                        std::size_t ambient_dim) {
  RationalSubspace s;
  s.ambient_dim_ = ambient_dim;
  s.rebuild();
  for (const IntVec& v : vectors) {
    if (v.size() != ambient_dim) {
      throw Error(ErrorCode::kInvalidArgument, "dimension mismatch in span");
    }
    if (s.dim() == ambient_dim) break;
    if (s.contains(v)) continue;
    s.basis_.push_back(primitive(v));
    s.rebuild();
  }
  return s;
}

void RationalSubspace::rebuild() {
  const std::size_t d = ambient_dim_;
  chart_.clear();
  annihilator_small_.clear();
  annihilator_big_.reset();
  fits_small_ = true;
  annihilator_bits_ = 0;
  if (basis_.empty()) {
    // The zero subspace: annihilated by every coordinate.
    for (std::size_t i = 0; i < d; ++i) {
      IntVec e(d, 0);
      e[i] = 1;
      annihilator_small_.push_back(e);
    }
    annihilator_bits_ = 1;
    return;
  }
  std::vector<std::size_t> pivots;
  auto rows = detail::integer_nullspace(basis_, d, &pivots);
  chart_ = pivots;
  for (const auto& r : rows) {
    for (const mpz_class& e : r) {
      if (!e.fits_slong_p()) fits_small_ = false;
      annihilator_bits_ = std::max<int>(
          annihilator_bits_, static_cast<int>(mpz_sizeinbase(e.get_mpz_t(), 2)));
    }
  }
  if (fits_small_) {
    for (const auto& r : rows) {
      IntVec v(d);
      for (std::size_t i = 0; i < d; ++i) v[i] = r[i].get_si();
      annihilator_small_.push_back(std::move(v));
    }
  }
  auto big = std::make_shared<detail::BigRows>();
  big->rows = std::move(rows);
  annihilator_big_ = std::move(big);
}

bool RationalSubspace::contains(const IntVec& x) const {
  if (x.size() != ambient_dim_) {
    throw Error(ErrorCode::kInvalidArgument, "dimension mismatch in contains");
  }
  if (dim() == ambient_dim_) return true;
  const int xbits = max_bit_length(x);
  int logd = 0;
  while ((std::size_t{1} << logd) < ambient_dim_) ++logd;
  if (fits_small_ && xbits + annihilator_bits_ + logd <= 125) {
    for (const IntVec& a : annihilator_small_) {
      __int128 s = 0;
      for (std::size_t i = 0; i < ambient_dim_; ++i) {
        s += static_cast<__int128>(a[i]) * static_cast<__int128>(x[i]);
      }
      if (s != 0) return false;
    }
    return true;
  }
  for (const auto& a : annihilator_big_->rows) {
    if (!detail::dot_is_zero(a, x)) return false;
  }
  return true;
}

bool RationalSubspace::contains(const RationalSubspace& other) const {
  for (const IntVec& b : other.basis_) {
    if (!contains(b)) return false;
  }
  return true;
}

bool RationalSubspace::operator==(const RationalSubspace& other) const {
  return ambient_dim_ == other.ambient_dim_ && dim() == other.dim() &&
         contains(other);
}

IntVec RationalSubspace::chart_coordinates(const IntVec& x) const {
  IntVec out(chart_.size());
  for (std::size_t i = 0; i < chart_.size(); ++i) out[i] = x[chart_[i]];
  return out;
}

Matrix RationalSubspace::orthonormal_basis() const {
  std::vector<Vector> cols;
  cols.reserve(basis_.size());
  for (const IntVec& b : basis_) cols.push_back(unit_direction(b));
  return orthonormalize(cols);
}

}  // namespace fdc

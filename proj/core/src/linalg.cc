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


#include "fdc/linalg.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

#include "fdc/errors.h"

namespace fdc {

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) {
      throw Error(ErrorCode::kInvalidArgument, "ragged matrix literal");
    }
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows) {
  if (rows.empty()) return Matrix();
  Matrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols()) {
      throw Error(ErrorCode::kInvalidArgument, "ragged rows");
    }
    std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
  }
  return m;
}

Matrix Matrix::from_columns(const std::vector<Vector>& cols) {
  if (cols.empty()) return Matrix();
  Matrix m(cols[0].size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != m.rows()) {
      throw Error(ErrorCode::kInvalidArgument, "ragged columns");
    }
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) = cols[j][i];
  }
  return m;
}

Vector Matrix::column(std::size_t j) const {
  Vector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

std::vector<Vector> Matrix::to_rows() const {
  std::vector<Vector> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    out[i].assign(row(i).begin(), row(i).end());
  }
  return out;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double Matrix::trace() const {
  double s = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
  return s;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::fabs(v));
  return m;
}

double Matrix::frobenius_norm() const {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return std::sqrt(s);
}

Matrix& Matrix::operator+=(const Matrix& o) {
  if (o.rows_ != rows_ || o.cols_ != cols_) {
    throw Error(ErrorCode::kInvalidArgument, "shape mismatch in +=");
  }
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  if (o.rows_ != rows_ || o.cols_ != cols_) {
    throw Error(ErrorCode::kInvalidArgument, "shape mismatch in -=");
  }
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(Matrix a, double s) { return a *= s; }
Matrix operator*(double s, Matrix a) { return a *= s; }

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorCode::kInvalidArgument, "shape mismatch in product");
  }
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const double ail = a(i, l);
      if (ail == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += ail * b(l, j);
    }
  }
  return c;
}

Vector operator*(const Matrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) {
    throw Error(ErrorCode::kInvalidArgument, "shape mismatch in A x");
  }
  Vector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) y[i] = dot(a.row(i), x);
  return y;
}

Vector transpose_times(const Matrix& a, std::span<const double> x) {
  if (a.rows() != x.size()) {
    throw Error(ErrorCode::kInvalidArgument, "shape mismatch in A^T x");
  }
  Vector y(a.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double xi = x[i];
    for (std::size_t j = 0; j < a.cols(); ++j) y[j] += a(i, j) * xi;
  }
  return y;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

Vector normalized(std::span<const double> a) {
  const double n = norm2(a);
  Vector out(a.begin(), a.end());
  if (n > 0.0) {
    for (double& v : out) v /= n;
  }
  return out;
}

void add_outer(Matrix& m, std::span<const double> x, double s) {
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double sxi = s * x[i];
    double* row = &m(i, 0);
    for (std::size_t j = 0; j < n; ++j) row[j] += sxi * x[j];
  }
}

void check_symmetric(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::kNonSymmetric, "matrix is not square");
  }
  double asym = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      asym = std::max(asym, std::fabs(m(i, j) - m(j, i)));
  if (asym > 1e-12 * m.max_abs()) {
    throw Error(ErrorCode::kNonSymmetric,
                "asymmetry " + std::to_string(asym) + " exceeds tolerance");
  }
}

SymmetricEigen sym_eigen(const Matrix& m) {
  check_symmetric(m);
  const std::size_t n = m.rows();
  Matrix a = m;
  // Symmetrize exactly so rotations act on a truly symmetric array.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = 0.5 * (a(i, j) + a(j, i));
      a(i, j) = v;
      a(j, i) = v;
    }
  Matrix v = Matrix::identity(n);
  const double eps = std::numeric_limits<double>::epsilon();
  const double tiny = 1e-18 * a.frobenius_norm() + 1e-300;
  constexpr int kSweepBudget = 100;
  bool converged = (n <= 1);
  for (int sweep = 0; sweep < kSweepBudget && !converged; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        const double app = a(p, p);
        const double aqq = a(q, q);
        if (std::fabs(apq) <= std::max(tiny, eps * std::sqrt(std::fabs(app * aqq)))) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        rotated = true;
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
    converged = !rotated;
  }
  if (!converged) {
    throw Error(ErrorCode::kNonConvergent, "Jacobi sweep budget exhausted");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i) > a(j, j);
  });
  SymmetricEigen out;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t src = order[j];
    out.values[j] = a(src, src);
    double sign = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (std::fabs(v(i, src)) > 1e-12) {
        sign = v(i, src) > 0 ? 1.0 : -1.0;
        break;
      }
    }
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = sign * v(i, src);
  }
  return out;
}

double lambda_min(const Matrix& m) { return sym_eigen(m).values.back(); }
double lambda_max(const Matrix& m) { return sym_eigen(m).values.front(); }

double spectral_norm(const Matrix& m) {
  if (m.empty()) return 0.0;
  const Matrix g = m.rows() >= m.cols() ? m.transpose() * m : m * m.transpose();
  return std::sqrt(std::max(0.0, sym_eigen(g).values.front()));
}

Matrix inv_sqrt_psd(const Matrix& m, double floor) {
  const SymmetricEigen e = sym_eigen(m);
  const std::size_t n = m.rows();
  if (n == 0) return Matrix();
  if (!(e.values.back() >= floor)) {
    throw Error(ErrorCode::kNotPositiveDefinite,
                "min eigenvalue " + std::to_string(e.values.back()) +
                    " below floor " + std::to_string(floor));
  }
  Matrix b(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double s = 1.0 / std::sqrt(e.values[k]);
    for (std::size_t i = 0; i < n; ++i) {
      const double vik = s * e.vectors(i, k);
      for (std::size_t j = 0; j < n; ++j) b(i, j) += vik * e.vectors(j, k);
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = 0.5 * (b(i, j) + b(j, i));
      b(i, j) = b(j, i) = v;
    }
  return b;
}

bool cholesky(const Matrix& m, Matrix& lower) {
  const std::size_t n = m.rows();
  lower = Matrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = m(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= lower(j, k) * lower(j, k);
    if (!(d > 0.0)) return false;
    const double ljj = std::sqrt(d);
    lower(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = m(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= lower(i, k) * lower(j, k);
      lower(i, j) = s / ljj;
    }
  }
  return true;
}

void forward_substitute(const Matrix& lower, std::span<double> b) {
  const std::size_t n = lower.rows();
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= lower(i, k) * b[k];
    b[i] = s / lower(i, i);
  }
}

namespace {

struct HouseholderQr {
  Matrix a;                     // overwritten: R in the upper triangle
  std::vector<Vector> vs;       // reflector vectors (length rows - j)
  std::vector<double> betas;
  std::vector<std::size_t> perm;
  std::size_t steps = 0;
};

HouseholderQr householder(Matrix a, bool pivot) {
  HouseholderQr qr;
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  qr.perm.resize(n);
  std::iota(qr.perm.begin(), qr.perm.end(), 0);
  const std::size_t steps = std::min(m, n);
  for (std::size_t j = 0; j < steps; ++j) {
    if (pivot) {
      std::size_t best = j;
      double best_norm = -1.0;
      for (std::size_t c = j; c < n; ++c) {
        double s = 0.0;
        for (std::size_t i = j; i < m; ++i) s += a(i, c) * a(i, c);
        if (s > best_norm) {
          best_norm = s;
          best = c;
        }
      }
      if (best != j) {
        for (std::size_t i = 0; i < m; ++i) std::swap(a(i, j), a(i, best));
        std::swap(qr.perm[j], qr.perm[best]);
      }
    }
    Vector v(m - j);
    for (std::size_t i = j; i < m; ++i) v[i - j] = a(i, j);
    const double alpha = norm2(v);
    double beta = 0.0;
    if (alpha > 0.0) {
      // Reflect onto +alpha e1 so R has a nonnegative diagonal.
      const double x0 = v[0];
      if (x0 <= 0.0) {
        v[0] = x0 - alpha;
      } else {
        double tail = 0.0;
        for (std::size_t i = 1; i < v.size(); ++i) tail += v[i] * v[i];
        v[0] = -tail / (x0 + alpha);
      }
      const double vtv = dot(v, v);
      beta = vtv > 0.0 ? 2.0 / vtv : 0.0;
      for (std::size_t c = j; c < n; ++c) {
        double s = 0.0;
        for (std::size_t i = j; i < m; ++i) s += v[i - j] * a(i, c);
        s *= beta;
        for (std::size_t i = j; i < m; ++i) a(i, c) -= s * v[i - j];
      }
      a(j, j) = alpha;
      for (std::size_t i = j + 1; i < m; ++i) a(i, j) = 0.0;
    }
    qr.vs.push_back(std::move(v));
    qr.betas.push_back(beta);
  }
  qr.a = std::move(a);
  qr.steps = steps;
  return qr;
}

Matrix thin_q(const HouseholderQr& qr, std::size_t rows, std::size_t k) {
  Matrix q(rows, k);
  for (std::size_t c = 0; c < k; ++c) {
    Vector e(rows, 0.0);
    e[c] = 1.0;
    for (std::size_t jj = qr.steps; jj-- > 0;) {
      const Vector& v = qr.vs[jj];
      const double beta = qr.betas[jj];
      if (beta == 0.0) continue;
      double s = 0.0;
      for (std::size_t i = jj; i < rows; ++i) s += v[i - jj] * e[i];
      s *= beta;
      for (std::size_t i = jj; i < rows; ++i) e[i] -= s * v[i - jj];
    }
    for (std::size_t i = 0; i < rows; ++i) q(i, c) = e[i];
  }
  return q;
}

}  // namespace

Subspace::Subspace(Matrix basis) : basis_(std::move(basis)) {
  if (basis_.cols() == 0 || basis_.cols() > basis_.rows()) {
    throw Error(ErrorCode::kInvalidArgument, "subspace dimension out of range");
  }
}

Subspace Subspace::full(std::size_t d) { return Subspace(Matrix::identity(d)); }

Vector Subspace::coordinates(std::span<const double> x) const {
  return transpose_times(basis_, x);
}

Vector Subspace::embed(std::span<const double> y) const { return basis_ * y; }

double Subspace::distance(std::span<const double> x) const {
  const Vector p = embed(coordinates(x));
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - p[i]) * (x[i] - p[i]);
  return std::sqrt(s);
}

Subspace span_of(const std::vector<Vector>& points) {
  std::vector<Vector> cols;
  std::size_t d = 0;
  for (const Vector& p : points) {
    d = p.size();
    const double n = norm2(p);
    if (n > 0.0) cols.push_back(normalized(p));
  }
  if (cols.empty()) throw Error(ErrorCode::kEmptyInput, "no nonzero point");
  const HouseholderQr qr = householder(Matrix::from_columns(cols), true);
  const double r00 = std::fabs(qr.a(0, 0));
  std::size_t rank = 0;
  for (std::size_t j = 0; j < qr.steps; ++j) {
    if (std::fabs(qr.a(j, j)) > kRankTolerance * r00) ++rank;
    else break;
  }
  return Subspace(thin_q(qr, d, rank));
}

Matrix orthonormalize(const std::vector<Vector>& independent) {
  if (independent.empty()) {
    throw Error(ErrorCode::kEmptyInput, "no vectors to orthonormalize");
  }
  const HouseholderQr qr = householder(Matrix::from_columns(independent), false);
  for (std::size_t j = 0; j < qr.steps; ++j) {
    if (!(std::fabs(qr.a(j, j)) > 0.0)) {
      throw Error(ErrorCode::kRankDeficient, "dependent vectors");
    }
  }
  return thin_q(qr, independent[0].size(), independent.size());
}

}  // namespace fdc

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


#ifndef FDC_LINALG_H_
#define FDC_LINALG_H_

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace fdc {

using Vector = std::vector<double>;

// Dense row-major real matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> d);
  static Matrix from_rows(const std::vector<Vector>& rows);
  // Columns are the given vectors.
  static Matrix from_columns(const std::vector<Vector>& cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }
  std::span<double> row(std::size_t i) { return {&data_[i * cols_], cols_}; }
  std::span<const double> row(std::size_t i) const {
    return {&data_[i * cols_], cols_};
  }
  Vector column(std::size_t j) const;
  std::vector<Vector> to_rows() const;
  const std::vector<double>& data() const { return data_; }

  Matrix transpose() const;
  double trace() const;
  double max_abs() const;
  double frobenius_norm() const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(double s);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(Matrix a, double s);
Matrix operator*(double s, Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, std::span<const double> x);
// aᵀ x
Vector transpose_times(const Matrix& a, std::span<const double> x);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);
Vector normalized(std::span<const double> a);
// M += s * x xᵀ (M square, dim |x|).
void add_outer(Matrix& m, std::span<const double> x, double s);

// Throws NonSymmetric unless |M - Mᵀ|_max <= 1e-12 * |M|_max.
void check_symmetric(const Matrix& m);

struct SymmetricEigen {
  Vector values;   // descending
  Matrix vectors;  // column j pairs with values[j]
};

// Cyclic Jacobi. Eigenvector signs are fixed so the first entry above 1e-12
// in magnitude is positive.
SymmetricEigen sym_eigen(const Matrix& m);
double lambda_min(const Matrix& m);
double lambda_max(const Matrix& m);
// Largest singular value.
double spectral_norm(const Matrix& m);

// B with B M B = I. Throws NotPositiveDefinite if some eigenvalue < floor.
Matrix inv_sqrt_psd(const Matrix& m, double floor);

// Lower Cholesky factor; returns false if M is not numerically positive
// definite.
bool cholesky(const Matrix& m, Matrix& lower);
// Solves L y = b in place.
void forward_substitute(const Matrix& lower, std::span<double> b);

// Orthonormal basis held as the columns of a d x k matrix.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(Matrix basis);

  static Subspace full(std::size_t d);

  std::size_t ambient_dim() const { return basis_.rows(); }
  std::size_t dim() const { return basis_.cols(); }
  const Matrix& basis() const { return basis_; }

  // Qᵀ x
  Vector coordinates(std::span<const double> x) const;
  // Q y
  Vector embed(std::span<const double> y) const;
  double distance(std::span<const double> x) const;

 private:
  Matrix basis_;
};

inline constexpr double kRankTolerance = 1e-9;

// Span of real vectors; rank decided by pivoted QR with diagonal entries
// compared against kRankTolerance times the largest.
Subspace span_of(const std::vector<Vector>& points);

// Orthonormal basis for the span of linearly independent columns given as
// vectors (Householder QR).
Matrix orthonormalize(const std::vector<Vector>& independent);

}  // namespace fdc

#endif  // FDC_LINALG_H_

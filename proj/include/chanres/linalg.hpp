// Copyright 2026 The chanres Authors
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

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace chanres {

using cplx = std::complex<double>;

// Max-abs tolerance used for every Hermiticity check in the library.
inline constexpr double kHermitianTol = 1e-10;

// Dense row-major complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> diag);
  static ComplexMatrix diagonal(std::initializer_list<double> diag) {
    return diagonal(std::span<const double>(diag.begin(), diag.size()));
  }
  // |v><v| for a column vector v.
  static ComplexMatrix outer(std::span<const cplx> v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<cplx> entries() { return data_; }
  std::span<const cplx> entries() const { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  cplx trace() const;
  // Largest |entry|.
  double max_abs() const;
  double frobenius_norm() const;
  bool is_hermitian(double tol = kHermitianTol) const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cplx s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend bool operator==(const ComplexMatrix& a, const ComplexMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

// max_{ij} |a_ij - b_ij|; throws DimensionError on shape mismatch.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

// a * b^dagger without materializing the adjoint.
ComplexMatrix mul_adjoint(const ComplexMatrix& a, const ComplexMatrix& b);
// a^dagger * b.
ComplexMatrix adjoint_mul(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Trace out every subsystem not listed in `keep`. Subsystems are ordered
// with the first entry of `dims` most significant. Kept subsystems retain
// their relative order.
ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep);

struct EigDecomposition {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // column k pairs with eigenvalues[k]
};

// Cyclic Jacobi eigensolver for Hermitian matrices.
EigDecomposition herm_eig(const ComplexMatrix& h);
// Eigenvalues only (same algorithm, skips the eigenvector accumulation).
std::vector<double> herm_eigvals(const ComplexMatrix& h);

// Sum of singular values.
double trace_norm(const ComplexMatrix& m);

// Dense row-major real matrix; the interior-point solver works exclusively
// in this representation.
class RealMatrix {
 public:
  RealMatrix() = default;
  RealMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  static RealMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<double> entries() { return data_; }
  std::span<const double> entries() const { return data_; }

  RealMatrix transpose() const;
  double trace() const;
  double frobenius_norm() const;
  // (M + M^T) / 2 in place.
  void symmetrize();

  RealMatrix& operator+=(const RealMatrix& o);
  RealMatrix& operator-=(const RealMatrix& o);
  RealMatrix& operator*=(double s);
  friend RealMatrix operator+(RealMatrix a, const RealMatrix& b) { return a += b; }
  friend RealMatrix operator-(RealMatrix a, const RealMatrix& b) { return a -= b; }
  friend RealMatrix operator*(RealMatrix a, double s) { return a *= s; }
  friend RealMatrix operator*(double s, RealMatrix a) { return a *= s; }
  friend RealMatrix operator*(const RealMatrix& a, const RealMatrix& b);
  friend bool operator==(const RealMatrix& a, const RealMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// <a, b> = Tr(a^T b).
double frobenius_inner(const RealMatrix& a, const RealMatrix& b);

struct SymEigDecomposition {
  std::vector<double> eigenvalues;  // ascending
  RealMatrix eigenvectors;
};

// Cyclic Jacobi for real symmetric matrices.
SymEigDecomposition sym_eig(const RealMatrix& s);
std::vector<double> sym_eigvals(const RealMatrix& s);

// Lower-triangular L with L L^T = a. Returns false when a is not
// numerically positive definite.
bool cholesky(const RealMatrix& a, RealMatrix& lower);
// Solves (L L^T) x = b in place.
void cholesky_solve(const RealMatrix& lower, std::span<double> b);
// Inverse of L L^T.
RealMatrix cholesky_inverse(const RealMatrix& lower);
// L^{-1} M L^{-T} for symmetric M.
RealMatrix congruence_inverse(const RealMatrix& lower, const RealMatrix& m);

}  // namespace chanres

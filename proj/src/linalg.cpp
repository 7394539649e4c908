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

#include "chanres/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "chanres/error.hpp"

namespace chanres {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kOffDiagonalTol = 1e-13;

void require_same_shape(std::size_t r1, std::size_t c1, std::size_t r2, std::size_t c2) {
  if (r1 != r2 || c1 != c2) {
    throw DimensionError("shape mismatch: " + std::to_string(r1) + "x" + std::to_string(c1) + " vs " +
                         std::to_string(r2) + "x" + std::to_string(c2));
  }
}

// Permutation that sorts `values` ascending; stable so ties keep solver order.
std::vector<std::size_t> ascending_order(const std::vector<double>& values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  return order;
}

// Runs cyclic Jacobi on a working copy. `vectors` may be null.
std::vector<double> jacobi_hermitian(ComplexMatrix a, ComplexMatrix* vectors) {
  const std::size_t n = a.rows();
  if (vectors) *vectors = ComplexMatrix::identity(n);
  const double scale = std::max(1.0, a.frobenius_norm());
  for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();

  bool converged = false;
  for (int sweep = 0; sweep <= kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (std::sqrt(off) <= kOffDiagonalTol * scale) {
      converged = true;
      break;
    }
    if (sweep == kMaxSweeps) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx b = a(p, q);
        const double g = std::abs(b);
        if (g == 0.0) continue;
        const cplx phase = b / g;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * g);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // G = diag(1, conj(phase)) * [[c, s], [-s, c]] acting on (p, q).
        const cplx gpp = c;
        const cplx gpq = s;
        const cplx gqp = -s * std::conj(phase);
        const cplx gqq = c * std::conj(phase);

        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a(k, p);
          const cplx akq = a(k, q);
          a(k, p) = akp * gpp + akq * gqp;
          a(k, q) = akp * gpq + akq * gqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = a(p, k);
          const cplx aqk = a(q, k);
          a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
          a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = app - t * g;
        a(q, q) = aqq + t * g;

        if (vectors) {
          ComplexMatrix& v = *vectors;
          for (std::size_t k = 0; k < n; ++k) {
            const cplx vkp = v(k, p);
            const cplx vkq = v(k, q);
            v(k, p) = vkp * gpp + vkq * gqp;
            v(k, q) = vkp * gpq + vkq * gqq;
          }
        }
      }
    }
  }
  if (!converged) throw NumericalError("herm_eig: Jacobi iteration did not converge");

  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a(i, i).real();
  return eig;
}

std::vector<double> jacobi_symmetric(RealMatrix a, RealMatrix* vectors) {
  const std::size_t n = a.rows();
  if (vectors) *vectors = RealMatrix::identity(n);
  const double scale = std::max(1.0, a.frobenius_norm());

  bool converged = false;
  for (int sweep = 0; sweep <= kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (std::sqrt(off) <= kOffDiagonalTol * scale) {
      converged = true;
      break;
    }
    if (sweep == kMaxSweeps) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double g = a(p, q);
        if (g == 0.0) continue;
        const double app = a(p, p);
        const double aqq = a(q, q);
        const double theta = (aqq - app) / (2.0 * g);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
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
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = app - t * g;
        a(q, q) = aqq + t * g;
        if (vectors) {
          RealMatrix& v = *vectors;
          for (std::size_t k = 0; k < n; ++k) {
            const double vkp = v(k, p);
            const double vkq = v(k, q);
            v(k, p) = c * vkp - s * vkq;
            v(k, q) = s * vkp + c * vkq;
          }
        }
      }
    }
  }
  if (!converged) throw NumericalError("sym_eig: Jacobi iteration did not converge");

  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a(i, i);
  return eig;
}

}  // namespace

// ---------------------------------------------------------------------------
// ComplexMatrix

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    throw DimensionError("ComplexMatrix: " + std::to_string(data_.size()) + " entries for a " + std::to_string(rows_) +
                         "x" + std::to_string(cols_) + " matrix");
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> diag) {
  ComplexMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const cplx> v) {
  ComplexMatrix m(v.size(), v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = v[i] * std::conj(v[j]);
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

cplx ComplexMatrix::trace() const {
  if (!is_square()) throw DimensionError("trace of a non-square matrix");
  cplx t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const cplx& z : data_) m = std::max(m, std::abs(z));
  return m;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const cplx& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

bool ComplexMatrix::is_hermitian(double tol) const {
  if (!is_square()) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = r; c < cols_; ++c)
      if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > tol) return false;
  return true;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  require_same_shape(rows_, cols_, o.rows_, o.cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  require_same_shape(rows_, cols_, o.rows_, o.cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (cplx& z : data_) z *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols_ != b.rows_) {
    throw DimensionError("matrix product: inner dimensions " + std::to_string(a.cols_) + " and " +
                         std::to_string(b.rows_));
  }
  ComplexMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx(0.0)) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a.rows(), a.cols(), b.rows(), b.cols());
  double m = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
  return m;
}

ComplexMatrix mul_adjoint(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.cols()) throw DimensionError("mul_adjoint: column counts differ");
  ComplexMatrix out(a.rows(), b.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.rows(); ++j) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * std::conj(b(j, k));
      out(i, j) = s;
    }
  return out;
}

ComplexMatrix adjoint_mul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows()) throw DimensionError("adjoint_mul: row counts differ");
  ComplexMatrix out(a.cols(), b.cols());
  for (std::size_t k = 0; k < a.rows(); ++k)
    for (std::size_t i = 0; i < a.cols(); ++i) {
      const cplx aki = std::conj(a(k, i));
      if (aki == cplx(0.0)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aki * b(k, j);
    }
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep) {
  std::size_t total = 1;
  for (std::size_t d : dims) {
    if (d == 0) throw DimensionError("partial_trace: zero subsystem dimension");
    total *= d;
  }
  if (!m.is_square() || m.rows() != total) {
    throw DimensionError("partial_trace: subsystem dimensions multiply to " + std::to_string(total) +
                         " but the matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  std::vector<bool> kept(dims.size(), false);
  for (std::size_t k : keep) {
    if (k >= dims.size()) throw DimensionError("partial_trace: subsystem index " + std::to_string(k) + " out of range");
    if (kept[k]) throw DimensionError("partial_trace: subsystem index " + std::to_string(k) + " repeated");
    kept[k] = true;
  }

  // Split every full index into (kept part, traced part) by mixed radix.
  std::size_t kept_dim = 1;
  for (std::size_t s = 0; s < dims.size(); ++s)
    if (kept[s]) kept_dim *= dims[s];
  std::vector<std::size_t> kept_idx(total), traced_idx(total);
  for (std::size_t full = 0; full < total; ++full) {
    std::size_t rem = full;
    std::size_t ki = 0, ti = 0, kmul = 1, tmul = 1;
    for (std::size_t s = dims.size(); s-- > 0;) {
      const std::size_t digit = rem % dims[s];
      rem /= dims[s];
      if (kept[s]) {
        ki += digit * kmul;
        kmul *= dims[s];
      } else {
        ti += digit * tmul;
        tmul *= dims[s];
      }
    }
    kept_idx[full] = ki;
    traced_idx[full] = ti;
  }

  ComplexMatrix out(kept_dim, kept_dim);
  for (std::size_t i = 0; i < total; ++i)
    for (std::size_t j = 0; j < total; ++j)
      if (traced_idx[i] == traced_idx[j]) out(kept_idx[i], kept_idx[j]) += m(i, j);
  return out;
}

EigDecomposition herm_eig(const ComplexMatrix& h) {
  if (!h.is_hermitian(kHermitianTol)) throw ValidationError("herm_eig: input is not Hermitian");
  ComplexMatrix vectors;
  std::vector<double> raw = jacobi_hermitian(h, &vectors);
  const auto order = ascending_order(raw);
  EigDecomposition out;
  out.eigenvalues.resize(raw.size());
  out.eigenvectors = ComplexMatrix(h.rows(), h.cols());
  for (std::size_t k = 0; k < order.size(); ++k) {
    out.eigenvalues[k] = raw[order[k]];
    for (std::size_t r = 0; r < h.rows(); ++r) out.eigenvectors(r, k) = vectors(r, order[k]);
  }
  return out;
}

std::vector<double> herm_eigvals(const ComplexMatrix& h) {
  if (!h.is_hermitian(kHermitianTol)) throw ValidationError("herm_eigvals: input is not Hermitian");
  std::vector<double> eig = jacobi_hermitian(h, nullptr);
  std::sort(eig.begin(), eig.end());
  return eig;
}

double trace_norm(const ComplexMatrix& m) {
  if (!m.is_square()) throw DimensionError("trace_norm: non-square input");
  if (m.is_hermitian(kHermitianTol)) {
    // Direct spectrum is more accurate than the Gram route.
    double s = 0.0;
    for (double v : herm_eigvals(m)) s += std::abs(v);
    return s;
  }
  // Singular values are square roots of the eigenvalues of M^dagger M.
  ComplexMatrix gram = adjoint_mul(m, m);
  for (std::size_t i = 0; i < gram.rows(); ++i)
    for (std::size_t j = i + 1; j < gram.cols(); ++j) {
      const cplx avg = 0.5 * (gram(i, j) + std::conj(gram(j, i)));
      gram(i, j) = avg;
      gram(j, i) = std::conj(avg);
    }
  double s = 0.0;
  for (double v : jacobi_hermitian(gram, nullptr)) s += std::sqrt(std::max(v, 0.0));
  return s;
}

// ---------------------------------------------------------------------------
// RealMatrix

RealMatrix RealMatrix::identity(std::size_t n) {
  RealMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

RealMatrix RealMatrix::transpose() const {
  RealMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

double RealMatrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double RealMatrix::frobenius_norm() const {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return std::sqrt(s);
}

void RealMatrix::symmetrize() {
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = r + 1; c < cols_; ++c) {
      const double avg = 0.5 * ((*this)(r, c) + (*this)(c, r));
      (*this)(r, c) = avg;
      (*this)(c, r) = avg;
    }
}

RealMatrix& RealMatrix::operator+=(const RealMatrix& o) {
  require_same_shape(rows_, cols_, o.rows_, o.cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

RealMatrix& RealMatrix::operator-=(const RealMatrix& o) {
  require_same_shape(rows_, cols_, o.rows_, o.cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

RealMatrix& RealMatrix::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

RealMatrix operator*(const RealMatrix& a, const RealMatrix& b) {
  if (a.cols_ != b.rows_) throw DimensionError("real matrix product: inner dimensions differ");
  RealMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      const double* brow = &b.data_[k * b.cols_];
      double* orow = &out.data_[i * out.cols_];
      for (std::size_t j = 0; j < b.cols_; ++j) orow[j] += aik * brow[j];
    }
  return out;
}

double frobenius_inner(const RealMatrix& a, const RealMatrix& b) {
  require_same_shape(a.rows(), a.cols(), b.rows(), b.cols());
  double s = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) s += a.entries()[i] * b.entries()[i];
  return s;
}

SymEigDecomposition sym_eig(const RealMatrix& s) {
  if (s.rows() != s.cols()) throw DimensionError("sym_eig: non-square input");
  RealMatrix vectors;
  std::vector<double> raw = jacobi_symmetric(s, &vectors);
  const auto order = ascending_order(raw);
  SymEigDecomposition out;
  out.eigenvalues.resize(raw.size());
  out.eigenvectors = RealMatrix(s.rows(), s.cols());
  for (std::size_t k = 0; k < order.size(); ++k) {
    out.eigenvalues[k] = raw[order[k]];
    for (std::size_t r = 0; r < s.rows(); ++r) out.eigenvectors(r, k) = vectors(r, order[k]);
  }
  return out;
}

std::vector<double> sym_eigvals(const RealMatrix& s) {
  if (s.rows() != s.cols()) throw DimensionError("sym_eigvals: non-square input");
  std::vector<double> eig = jacobi_symmetric(s, nullptr);
  std::sort(eig.begin(), eig.end());
  return eig;
}

bool cholesky(const RealMatrix& a, RealMatrix& lower) {
  const std::size_t n = a.rows();
  lower = RealMatrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= lower(j, k) * lower(j, k);
    if (!(d > 0.0)) return false;
    const double ljj = std::sqrt(d);
    lower(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= lower(i, k) * lower(j, k);
      lower(i, j) = s / ljj;
    }
  }
  return true;
}

void cholesky_solve(const RealMatrix& lower, std::span<double> b) {
  const std::size_t n = lower.rows();
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= lower(i, k) * b[k];
    b[i] = s / lower(i, i);
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= lower(k, i) * b[k];
    b[i] = s / lower(i, i);
  }
}

RealMatrix cholesky_inverse(const RealMatrix& lower) {
  const std::size_t n = lower.rows();
  RealMatrix inv(n, n);
  std::vector<double> col(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::fill(col.begin(), col.end(), 0.0);
    col[j] = 1.0;
    cholesky_solve(lower, col);
    for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
  }
  inv.symmetrize();
  return inv;
}

RealMatrix congruence_inverse(const RealMatrix& lower, const RealMatrix& m) {
  const std::size_t n = lower.rows();
  // Forward-substitute columns: T = L^{-1} M.
  RealMatrix t = m;
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t i = 0; i < n; ++i) {
      double s = t(i, c);
      for (std::size_t k = 0; k < i; ++k) s -= lower(i, k) * t(k, c);
      t(i, c) = s / lower(i, i);
    }
  // Then rows: R = T L^{-T}, i.e. R^T = L^{-1} T^T.
  RealMatrix r = t.transpose();
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t i = 0; i < n; ++i) {
      double s = r(i, c);
      for (std::size_t k = 0; k < i; ++k) s -= lower(i, k) * r(k, c);
      r(i, c) = s / lower(i, i);
    }
  r.symmetrize();
  return r;
}

}  // namespace chanres

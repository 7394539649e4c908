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

#include "chanres/channel.hpp"

#include <cmath>
#include <string>

#include "chanres/error.hpp"

namespace chanres {

namespace {

void validate_state(const ComplexMatrix& m, double trace_tol) {
  if (!m.is_square() || m.rows() == 0) throw DimensionError("state: matrix must be square and nonempty");
  if (!m.is_hermitian(kStateTol)) throw ValidationError("state: matrix is not Hermitian");
  const cplx tr = m.trace();
  if (std::abs(tr - 1.0) > trace_tol) {
    throw ValidationError("state: trace is " + std::to_string(tr.real()) + ", expected 1");
  }
  const auto eig = herm_eigvals(m);
  if (eig.front() < -kStateTol) {
    throw ValidationError("state: minimum eigenvalue " + std::to_string(eig.front()) + " is negative");
  }
}

ComplexMatrix choi_from_kraus(std::size_t dim_in, std::size_t dim_out, const std::vector<ComplexMatrix>& kraus) {
  const std::size_t n = dim_in * dim_out;
  ComplexMatrix j(n, n);
  for (const ComplexMatrix& k : kraus)
    for (std::size_t i = 0; i < dim_in; ++i)
      for (std::size_t a = 0; a < dim_out; ++a) {
        const cplx kai = k(a, i);
        if (kai == cplx(0.0)) continue;
        for (std::size_t jj = 0; jj < dim_in; ++jj)
          for (std::size_t b = 0; b < dim_out; ++b) j(i * dim_out + a, jj * dim_out + b) += kai * std::conj(k(b, jj));
      }
  return j;
}

std::vector<ComplexMatrix> kraus_from_choi(const ComplexMatrix& j, std::size_t dim_in, std::size_t dim_out) {
  const EigDecomposition eig = herm_eig(j);
  std::vector<ComplexMatrix> kraus;
  for (std::size_t k = eig.eigenvalues.size(); k-- > 0;) {
    const double lambda = eig.eigenvalues[k];
    if (lambda <= kChoiEigenCutoff) continue;
    const double scale = std::sqrt(lambda);
    ComplexMatrix op(dim_out, dim_in);
    for (std::size_t i = 0; i < dim_in; ++i)
      for (std::size_t a = 0; a < dim_out; ++a) op(a, i) = scale * eig.eigenvectors(i * dim_out + a, k);
    kraus.push_back(std::move(op));
  }
  return kraus;
}

// Tr_out of a Choi-shaped matrix.
ComplexMatrix trace_out_output(const ComplexMatrix& j, std::size_t dim_in, std::size_t dim_out) {
  const std::size_t dims[] = {dim_in, dim_out};
  const std::size_t keep[] = {0};
  return partial_trace(j, dims, keep);
}

// Rebuilds a minimal Kraus list when the product constructions blow it up.
QChannel compress(std::vector<ComplexMatrix> ops, std::size_t dim_in, std::size_t dim_out) {
  if (ops.size() <= dim_in * dim_out) return QChannel::from_kraus(std::move(ops));
  return QChannel::from_choi(choi_from_kraus(dim_in, dim_out, ops), dim_in, dim_out);
}

}  // namespace

// ---------------------------------------------------------------------------
// QState

QState::QState(ComplexMatrix m) : matrix_(std::move(m)) { validate_state(matrix_, kStateTol); }

QState make_state_unchecked(ComplexMatrix m) { return QState(std::move(m), QState::Unchecked{}); }

QState QState::pure(std::span<const cplx> amplitudes) {
  double norm = 0.0;
  for (const cplx& a : amplitudes) norm += std::norm(a);
  if (amplitudes.empty() || norm == 0.0) throw ValidationError("pure state: zero vector");
  std::vector<cplx> v(amplitudes.begin(), amplitudes.end());
  const double inv = 1.0 / std::sqrt(norm);
  for (cplx& a : v) a *= inv;
  return make_state_unchecked(ComplexMatrix::outer(v));
}

QState QState::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw DimensionError("basis state index out of range");
  ComplexMatrix m(dim, dim);
  m(index, index) = 1.0;
  return make_state_unchecked(std::move(m));
}

QState QState::maximally_mixed(std::size_t dim) {
  if (dim == 0) throw DimensionError("state dimension must be positive");
  ComplexMatrix m = ComplexMatrix::identity(dim);
  m *= 1.0 / static_cast<double>(dim);
  return make_state_unchecked(std::move(m));
}

QState QState::maximally_coherent(std::size_t dim) {
  if (dim == 0) throw DimensionError("state dimension must be positive");
  std::vector<cplx> v(dim, 1.0);
  return pure(v);
}

QState tensor(const QState& a, const QState& b) { return make_state_unchecked(kron(a.matrix(), b.matrix())); }

// ---------------------------------------------------------------------------
// QChannel

QChannel::QChannel(std::size_t dim_in, std::size_t dim_out, std::vector<ComplexMatrix> kraus)
    : dim_in_(dim_in), dim_out_(dim_out), kraus_(std::move(kraus)) {
  choi_ = choi_from_kraus(dim_in_, dim_out_, kraus_);
}

QChannel QChannel::from_kraus(std::vector<ComplexMatrix> ops) {
  if (ops.empty()) throw DimensionError("from_kraus: empty Kraus list");
  const std::size_t dim_out = ops.front().rows();
  const std::size_t dim_in = ops.front().cols();
  if (dim_in == 0 || dim_out == 0) throw DimensionError("from_kraus: kraus[0] has a zero dimension");
  for (std::size_t k = 0; k < ops.size(); ++k) {
    if (ops[k].rows() != dim_out || ops[k].cols() != dim_in) {
      throw DimensionError("from_kraus: kraus[" + std::to_string(k) + "] is " + std::to_string(ops[k].rows()) + "x" +
                           std::to_string(ops[k].cols()) + ", expected " + std::to_string(dim_out) + "x" +
                           std::to_string(dim_in));
    }
  }
  ComplexMatrix sum(dim_in, dim_in);
  for (const ComplexMatrix& k : ops) sum += adjoint_mul(k, k);
  const double err = max_abs_diff(sum, ComplexMatrix::identity(dim_in));
  if (err > kTraceCheckTol) {
    throw ValidationError("from_kraus: sum of K^dagger K deviates from identity by " + std::to_string(err));
  }
  std::vector<ComplexMatrix> kept;
  kept.reserve(ops.size());
  for (ComplexMatrix& k : ops)
    if (k.frobenius_norm() >= kKrausPruneNorm) kept.push_back(std::move(k));
  return QChannel(dim_in, dim_out, std::move(kept));
}

QChannel QChannel::from_choi(const ComplexMatrix& j, std::size_t dim_in, std::size_t dim_out) {
  if (dim_in == 0 || dim_out == 0) throw DimensionError("from_choi: zero dimension");
  if (j.rows() != dim_in * dim_out || j.cols() != dim_in * dim_out) {
    throw DimensionError("from_choi: Choi matrix must be " + std::to_string(dim_in * dim_out) + " square");
  }
  if (!j.is_hermitian(kHermitianTol)) throw ValidationError("from_choi: Choi matrix is not Hermitian");
  const double tp_err = max_abs_diff(trace_out_output(j, dim_in, dim_out), ComplexMatrix::identity(dim_in));
  if (tp_err > kChoiTraceTol) {
    throw ValidationError("from_choi: Tr_out J deviates from identity by " + std::to_string(tp_err));
  }
  const auto eig = herm_eigvals(j);
  if (eig.front() < -kChoiPsdTol) {
    throw ValidationError("from_choi: Choi matrix has eigenvalue " + std::to_string(eig.front()));
  }
  return QChannel(dim_in, dim_out, kraus_from_choi(j, dim_in, dim_out));
}

ComplexMatrix apply_operator(const QChannel& n, const ComplexMatrix& x) {
  if (!x.is_square() || x.rows() != n.dim_in()) {
    throw DimensionError("apply: operator dimension " + std::to_string(x.rows()) + " does not match channel input " +
                         std::to_string(n.dim_in()));
  }
  ComplexMatrix out(n.dim_out(), n.dim_out());
  for (const ComplexMatrix& k : n.kraus()) out += mul_adjoint(k * x, k);
  return out;
}

QState apply(const QChannel& n, const QState& rho) {
  ComplexMatrix out = apply_operator(n, rho.matrix());
  // Output trace inherits the channel's trace-preservation tolerance.
  validate_state(out, kChoiTraceTol);
  return make_state_unchecked(std::move(out));
}

ComplexMatrix apply_via_choi(const QChannel& n, const ComplexMatrix& rho) {
  if (!rho.is_square() || rho.rows() != n.dim_in()) throw DimensionError("apply_via_choi: dimension mismatch");
  const std::size_t din = n.dim_in();
  const std::size_t dout = n.dim_out();
  const ComplexMatrix& j = n.choi();
  ComplexMatrix out(dout, dout);
  for (std::size_t i = 0; i < din; ++i)
    for (std::size_t jj = 0; jj < din; ++jj) {
      const cplx r = rho(i, jj);
      if (r == cplx(0.0)) continue;
      for (std::size_t a = 0; a < dout; ++a)
        for (std::size_t b = 0; b < dout; ++b) out(a, b) += r * j(i * dout + a, jj * dout + b);
    }
  return out;
}

QChannel tensor(const QChannel& n, const QChannel& m) {
  std::vector<ComplexMatrix> ops;
  ops.reserve(n.kraus().size() * m.kraus().size());
  for (const ComplexMatrix& k : n.kraus())
    for (const ComplexMatrix& l : m.kraus()) ops.push_back(kron(k, l));
  return compress(std::move(ops), n.dim_in() * m.dim_in(), n.dim_out() * m.dim_out());
}

QChannel compose(const QChannel& after, const QChannel& before) {
  if (before.dim_out() != after.dim_in()) {
    throw DimensionError("compose: output dimension " + std::to_string(before.dim_out()) +
                         " does not match input dimension " + std::to_string(after.dim_in()));
  }
  std::vector<ComplexMatrix> ops;
  ops.reserve(after.kraus().size() * before.kraus().size());
  for (const ComplexMatrix& a : after.kraus())
    for (const ComplexMatrix& b : before.kraus()) ops.push_back(a * b);
  return compress(std::move(ops), before.dim_in(), after.dim_out());
}

QChannel identity_channel(std::size_t dim) { return QChannel::from_kraus({ComplexMatrix::identity(dim)}); }

QChannel unitary_channel(const ComplexMatrix& u) {
  if (!u.is_square()) throw DimensionError("unitary_channel: matrix is not square");
  const double err = max_abs_diff(adjoint_mul(u, u), ComplexMatrix::identity(u.rows()));
  if (err > kHermitianTol) throw ValidationError("unitary_channel: U^dagger U deviates from I by " + std::to_string(err));
  return QChannel::from_kraus({u});
}

QChannel constant_channel(const QState& sigma, std::size_t dim_in) {
  if (dim_in == 0) throw DimensionError("constant_channel: zero input dimension");
  // Kraus sqrt(p_k) |v_k><i| over the spectral decomposition of sigma.
  const EigDecomposition eig = herm_eig(sigma.matrix());
  std::vector<ComplexMatrix> ops;
  for (std::size_t k = 0; k < eig.eigenvalues.size(); ++k) {
    const double p = eig.eigenvalues[k];
    if (p <= kChoiEigenCutoff) continue;
    for (std::size_t i = 0; i < dim_in; ++i) {
      ComplexMatrix op(sigma.dim(), dim_in);
      for (std::size_t a = 0; a < sigma.dim(); ++a) op(a, i) = std::sqrt(p) * eig.eigenvectors(a, k);
      ops.push_back(std::move(op));
    }
  }
  return QChannel::from_kraus(std::move(ops));
}

QChannel dephasing_channel(std::size_t dim) {
  std::vector<ComplexMatrix> ops;
  for (std::size_t i = 0; i < dim; ++i) {
    ComplexMatrix p(dim, dim);
    p(i, i) = 1.0;
    ops.push_back(std::move(p));
  }
  return QChannel::from_kraus(std::move(ops));
}

QChannel append_state_channel(std::size_t dim, const QState& sigma) {
  const EigDecomposition eig = herm_eig(sigma.matrix());
  std::vector<ComplexMatrix> ops;
  for (std::size_t k = 0; k < eig.eigenvalues.size(); ++k) {
    const double p = eig.eigenvalues[k];
    if (p <= kChoiEigenCutoff) continue;
    ComplexMatrix col(sigma.dim(), 1);
    for (std::size_t a = 0; a < sigma.dim(); ++a) col(a, 0) = std::sqrt(p) * eig.eigenvectors(a, k);
    ops.push_back(kron(ComplexMatrix::identity(dim), col));
  }
  return QChannel::from_kraus(std::move(ops));
}

QChannel discard_channel(std::size_t dim, std::size_t traced) {
  std::vector<ComplexMatrix> ops;
  for (std::size_t e = 0; e < traced; ++e) {
    ComplexMatrix row(1, traced);
    row(0, e) = 1.0;
    ops.push_back(kron(ComplexMatrix::identity(dim), row));
  }
  return QChannel::from_kraus(std::move(ops));
}

ComplexMatrix rotation_unitary(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return ComplexMatrix(2, 2, {c, -s, s, c});
}

ComplexMatrix hadamard() {
  const double h = 1.0 / std::sqrt(2.0);
  return ComplexMatrix(2, 2, {h, h, h, -h});
}

QChannel superop_apply(const FreeSuperOp& s, const QChannel& n) {
  if (s.ancilla_dim == 0) throw DimensionError("superop_apply: ancilla dimension must be positive");
  if (s.pre.dim_out() != n.dim_in() * s.ancilla_dim) {
    throw DimensionError("superop_apply: pre-processing outputs dimension " + std::to_string(s.pre.dim_out()) +
                         ", expected " + std::to_string(n.dim_in() * s.ancilla_dim));
  }
  if (s.post.dim_in() != n.dim_out() * s.ancilla_dim) {
    throw DimensionError("superop_apply: post-processing takes dimension " + std::to_string(s.post.dim_in()) +
                         ", expected " + std::to_string(n.dim_out() * s.ancilla_dim));
  }
  const QChannel widened = s.ancilla_dim == 1 ? n : tensor(n, identity_channel(s.ancilla_dim));
  return compose(s.post, compose(widened, s.pre));
}

}  // namespace chanres

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

#include <cstddef>
#include <span>
#include <vector>

#include "chanres/linalg.hpp"

namespace chanres {

inline constexpr double kStateTol = 1e-10;
inline constexpr double kTraceCheckTol = 1e-9;    // sum K^dagger K = I
inline constexpr double kChoiTraceTol = 1e-8;     // Tr_out J = I on Choi input
inline constexpr double kChoiPsdTol = 1e-9;
inline constexpr double kKrausPruneNorm = 1e-12;
inline constexpr double kChoiEigenCutoff = 1e-12;

// A density operator: Hermitian, unit trace, positive semidefinite, each
// to within kStateTol.
class QState {
 public:
  // Validates; throws ValidationError.
  explicit QState(ComplexMatrix m);

  static QState pure(std::span<const cplx> amplitudes);  // normalizes
  static QState basis(std::size_t dim, std::size_t index);
  static QState maximally_mixed(std::size_t dim);
  // Uniform superposition of all basis states; Psi_2 for dim = 2.
  static QState maximally_coherent(std::size_t dim);

  std::size_t dim() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  struct Unchecked {};
  QState(ComplexMatrix m, Unchecked) : matrix_(std::move(m)) {}
  friend QState make_state_unchecked(ComplexMatrix m);

  ComplexMatrix matrix_;
};

// Wraps without validation. For internal hot paths whose output is a
// state by construction.
QState make_state_unchecked(ComplexMatrix m);

QState tensor(const QState& a, const QState& b);

// A CPTP map held as a Kraus list with its Choi matrix
//   J = sum_ij |i><j| (x) N(|i><j|),   Tr_out J = I_in.
// Immutable once built.
class QChannel {
 public:
  std::size_t dim_in() const { return dim_in_; }
  std::size_t dim_out() const { return dim_out_; }
  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }
  const ComplexMatrix& choi() const { return choi_; }

  // Kraus operators are dim_out x dim_in. Throws DimensionError on shape
  // problems and ValidationError when sum K^dagger K deviates from I by
  // more than kTraceCheckTol.
  static QChannel from_kraus(std::vector<ComplexMatrix> ops);
  // Throws ValidationError unless j is Hermitian, PSD to -kChoiPsdTol and
  // Tr_out j = I to kChoiTraceTol.
  static QChannel from_choi(const ComplexMatrix& j, std::size_t dim_in, std::size_t dim_out);

 private:
  QChannel(std::size_t dim_in, std::size_t dim_out, std::vector<ComplexMatrix> kraus);

  std::size_t dim_in_ = 0;
  std::size_t dim_out_ = 0;
  std::vector<ComplexMatrix> kraus_;
  ComplexMatrix choi_;
};

QState apply(const QChannel& n, const QState& rho);
// Same map evaluated as Tr_in[(rho^T (x) I) J]; used to cross-check Kraus lists.
ComplexMatrix apply_via_choi(const QChannel& n, const ComplexMatrix& rho);
// Kraus action on an arbitrary square operator (no state validation).
ComplexMatrix apply_operator(const QChannel& n, const ComplexMatrix& x);

QChannel tensor(const QChannel& n, const QChannel& m);
// after o before.
QChannel compose(const QChannel& after, const QChannel& before);

QChannel identity_channel(std::size_t dim);
QChannel unitary_channel(const ComplexMatrix& u);
QChannel constant_channel(const QState& sigma, std::size_t dim_in);
QChannel dephasing_channel(std::size_t dim);
// rho -> rho (x) sigma on the right; maps dim -> dim * sigma.dim().
QChannel append_state_channel(std::size_t dim, const QState& sigma);
// Traces out the trailing `traced` factor of a dim * traced system.
QChannel discard_channel(std::size_t dim, std::size_t traced);

// [[cos t, -sin t], [sin t, cos t]] = exp(-i t sigma_y).
ComplexMatrix rotation_unitary(double theta);
ComplexMatrix hadamard();

// post o (N (x) id_ancilla) o pre.
struct FreeSuperOp {
  QChannel pre;
  QChannel post;
  std::size_t ancilla_dim = 1;
};

QChannel superop_apply(const FreeSuperOp& s, const QChannel& n);

}  // namespace chanres

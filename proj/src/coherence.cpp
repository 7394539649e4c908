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

#include "chanres/coherence.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

#include "chanres/error.hpp"

namespace chanres::coherence {

namespace {

double plogp_sum(const std::vector<double>& probs) {
  double h = 0.0;
  for (double p : probs) {
    const double q = std::clamp(p, 0.0, 1.0);
    if (q > 0.0) h -= q * std::log2(q);
  }
  return h;
}

std::vector<double> dirichlet(std::size_t n, std::mt19937_64& rng) {
  std::exponential_distribution<double> exp1(1.0);
  std::vector<double> w(n);
  double total = 0.0;
  for (double& x : w) {
    x = exp1(rng);
    total += x;
  }
  for (double& x : w) x /= total;
  return w;
}

void append_scaled(std::vector<ComplexMatrix>& out, std::vector<ComplexMatrix> ops, double weight) {
  const double s = std::sqrt(weight);
  for (ComplexMatrix& k : ops) out.push_back(k * cplx(s));
}

std::vector<ComplexMatrix> permutation_phase_kraus(std::size_t d, std::mt19937_64& rng) {
  std::vector<std::size_t> perm(d);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  ComplexMatrix u(d, d);
  for (std::size_t i = 0; i < d; ++i) u(perm[i], i) = std::polar(1.0, angle(rng));
  return {u};
}

std::vector<ComplexMatrix> dephasing_kraus(std::size_t d) {
  std::vector<ComplexMatrix> ops;
  for (std::size_t i = 0; i < d; ++i) {
    ComplexMatrix p(d, d);
    p(i, i) = 1.0;
    ops.push_back(std::move(p));
  }
  return ops;
}

std::vector<ComplexMatrix> constant_diagonal_kraus(std::size_t d, std::mt19937_64& rng) {
  const std::vector<double> delta = dirichlet(d, rng);
  std::vector<ComplexMatrix> ops;
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t i = 0; i < d; ++i) {
      ComplexMatrix k(d, d);
      k(a, i) = std::sqrt(delta[a]);
      ops.push_back(std::move(k));
    }
  return ops;
}

}  // namespace

QState dephase(const QState& rho) {
  ComplexMatrix d(rho.dim(), rho.dim());
  for (std::size_t i = 0; i < rho.dim(); ++i) d(i, i) = rho.matrix()(i, i).real();
  return make_state_unchecked(std::move(d));
}

double entropy_bits(const ComplexMatrix& rho) { return plogp_sum(herm_eigvals(rho)); }

double shannon_of_diagonal(const ComplexMatrix& rho) {
  std::vector<double> diag(rho.rows());
  for (std::size_t i = 0; i < rho.rows(); ++i) diag[i] = rho(i, i).real();
  return plogp_sum(diag);
}

double c_r_matrix(const ComplexMatrix& rho) { return shannon_of_diagonal(rho) - entropy_bits(rho); }

double von_neumann_entropy(const QState& rho) { return entropy_bits(rho.matrix()); }

double rel_entropy(const QState& rho, const QState& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw DimensionError("rel_entropy: dimensions " + std::to_string(rho.dim()) + " and " +
                         std::to_string(sigma.dim()));
  }
  const EigDecomposition se = herm_eig(sigma.matrix());
  const ComplexMatrix& r = rho.matrix();
  const std::size_t d = rho.dim();
  double cross = 0.0;  // Tr rho log2 sigma
  for (std::size_t k = 0; k < d; ++k) {
    // <v_k| rho |v_k>
    cplx w = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      cplx row = 0.0;
      for (std::size_t j = 0; j < d; ++j) row += r(i, j) * se.eigenvectors(j, k);
      w += std::conj(se.eigenvectors(i, k)) * row;
    }
    const double weight = w.real();
    const double q = se.eigenvalues[k];
    if (q < kSupportEigenCutoff) {
      if (weight > kSupportWeightCutoff) return kInfinity;
      continue;
    }
    cross += weight * std::log2(q);
  }
  const double value = -von_neumann_entropy(rho) - cross;
  return std::max(value, 0.0);
}

double c_r(const QState& rho) { return std::max(c_r_matrix(rho.matrix()), 0.0); }

bool is_incoherent(const QState& rho, double tol) {
  const ComplexMatrix& m = rho.matrix();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (i != j && std::abs(m(i, j)) > tol) return false;
  return true;
}

bool is_mio(const QChannel& n, double tol) {
  // Diagonal input-block i of the Choi matrix is N(|i><i|).
  const ComplexMatrix& j = n.choi();
  const std::size_t dout = n.dim_out();
  for (std::size_t i = 0; i < n.dim_in(); ++i)
    for (std::size_t a = 0; a < dout; ++a)
      for (std::size_t b = 0; b < dout; ++b)
        if (a != b && std::abs(j(i * dout + a, i * dout + b)) > tol) return false;
  return true;
}

QChannel free_channel_mixture(std::size_t d, const FreeChannelRecipe& recipe, std::uint64_t seed) {
  if (d == 0) throw DimensionError("free_channel_mixture: zero dimension");
  if (recipe.components.empty() || recipe.components.size() != recipe.weights.size()) {
    throw DimensionError("free_channel_mixture: need one weight per component");
  }
  std::mt19937_64 rng(seed);
  std::vector<ComplexMatrix> ops;
  for (std::size_t c = 0; c < recipe.components.size(); ++c) {
    const double w = recipe.weights[c];
    if (w < 0.0) throw ValidationError("free_channel_mixture: negative weight");
    std::vector<ComplexMatrix> part;
    switch (recipe.components[c]) {
      case FreeComponent::kPermutationPhase:
        part = permutation_phase_kraus(d, rng);
        break;
      case FreeComponent::kDephasing:
        part = dephasing_kraus(d);
        break;
      case FreeComponent::kConstantDiagonal:
        part = constant_diagonal_kraus(d, rng);
        break;
    }
    if (w > 0.0) append_scaled(ops, std::move(part), w);
  }
  return QChannel::from_kraus(std::move(ops));
}

QChannel sample_free_channel(std::size_t d, std::uint64_t seed) {
  if (d < 2) throw DimensionError("sample_free_channel: dimension must be at least 2");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> count(2, 4);
  std::uniform_int_distribution<int> kind(0, 2);
  FreeChannelRecipe recipe;
  const int n = count(rng);
  for (int i = 0; i < n; ++i) recipe.components.push_back(static_cast<FreeComponent>(kind(rng)));
  recipe.weights = dirichlet(recipe.components.size(), rng);
  return free_channel_mixture(d, recipe, rng());
}

}  // namespace chanres::coherence

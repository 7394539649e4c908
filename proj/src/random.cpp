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

#include "chanres/random.hpp"

#include <algorithm>
#include <cmath>

#include "chanres/error.hpp"

namespace chanres::random {

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<cplx> gaussian_vector(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<cplx> v(n);
  for (cplx& z : v) {
    const double re = g(rng);
    const double im = g(rng);
    z = cplx(re, im);
  }
  return v;
}

ComplexMatrix gaussian_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  return ComplexMatrix(rows, cols, gaussian_vector(rows * cols, rng));
}

ComplexMatrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
  const ComplexMatrix g = gaussian_matrix(n, n, rng);
  ComplexMatrix h = g + g.adjoint();
  h *= 0.5;
  return h;
}

ComplexMatrix random_isometry(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  if (cols > rows) throw DimensionError("random_isometry: more columns than rows");
  ComplexMatrix v = gaussian_matrix(rows, cols, rng);
  // Modified Gram-Schmidt, twice for numerical orthogonality.
  for (int pass = 0; pass < 2; ++pass)
    for (std::size_t c = 0; c < cols; ++c) {
      for (std::size_t p = 0; p < c; ++p) {
        cplx dot = 0.0;
        for (std::size_t r = 0; r < rows; ++r) dot += std::conj(v(r, p)) * v(r, c);
        for (std::size_t r = 0; r < rows; ++r) v(r, c) -= dot * v(r, p);
      }
      double norm = 0.0;
      for (std::size_t r = 0; r < rows; ++r) norm += std::norm(v(r, c));
      norm = std::sqrt(norm);
      for (std::size_t r = 0; r < rows; ++r) v(r, c) /= norm;
    }
  return v;
}

ComplexMatrix random_unitary(std::size_t n, std::mt19937_64& rng) { return random_isometry(n, n, rng); }

QState random_pure_state(std::size_t d, std::mt19937_64& rng) { return QState::pure(gaussian_vector(d, rng)); }

QState random_mixed_state(std::size_t d, std::mt19937_64& rng) {
  const ComplexMatrix g = gaussian_matrix(d, d, rng);
  ComplexMatrix rho = mul_adjoint(g, g);
  rho *= 1.0 / rho.trace().real();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) rho(j, i) = std::conj(rho(i, j));
  return QState(std::move(rho));
}

QChannel random_channel(std::size_t dim_in, std::size_t dim_out, std::size_t kraus_count, std::mt19937_64& rng) {
  if (dim_in == 0 || dim_out == 0) throw DimensionError("random_channel: zero dimension");
  kraus_count = std::max(kraus_count, (dim_in + dim_out - 1) / dim_out);
  const ComplexMatrix v = random_isometry(dim_out * kraus_count, dim_in, rng);
  std::vector<ComplexMatrix> ops;
  for (std::size_t k = 0; k < kraus_count; ++k) {
    ComplexMatrix op(dim_out, dim_in);
    for (std::size_t a = 0; a < dim_out; ++a)
      for (std::size_t i = 0; i < dim_in; ++i) op(a, i) = v(k * dim_out + a, i);
    ops.push_back(std::move(op));
  }
  return QChannel::from_kraus(std::move(ops));
}

}  // namespace chanres::random

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

#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "chanres/error.hpp"
#include "chanres/random.hpp"
#include "test_util.hpp"

namespace chanres {
namespace {

using testing::pauli_z;

ComplexMatrix from_rows(std::size_t n, std::vector<cplx> entries) { return ComplexMatrix(n, n, std::move(entries)); }

TEST(KronTest, IdentityTimesIdentity) {
  EXPECT_EQ(kron(ComplexMatrix::identity(2), ComplexMatrix::identity(2)), ComplexMatrix::identity(4));
}

TEST(KronTest, DiagonalFactors) {
  EXPECT_EQ(kron(pauli_z(), ComplexMatrix::identity(2)), ComplexMatrix::diagonal({1.0, 1.0, -1.0, -1.0}));
}

TEST(KronTest, MatchesIndexFormula) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 20; ++t) {
    const ComplexMatrix r = random::gaussian_matrix(2, 2, rng);
    const ComplexMatrix s = random::gaussian_matrix(2, 2, rng);
    const ComplexMatrix k = kron(r, s);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t a = 0; a < 2; ++a)
          for (std::size_t b = 0; b < 2; ++b) EXPECT_EQ(k(2 * i + a, 2 * j + b), r(i, j) * s(a, b));
  }
}

TEST(KronTest, RectangularShapes) {
  const ComplexMatrix k = kron(ComplexMatrix(2, 3), ComplexMatrix(1, 4));
  EXPECT_EQ(k.rows(), 2u);
  EXPECT_EQ(k.cols(), 12u);
}

TEST(KronTest, AssociativeUpToRounding) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 50; ++t) {
    const ComplexMatrix a = random::gaussian_matrix(2, 3, rng);
    const ComplexMatrix b = random::gaussian_matrix(2, 2, rng);
    const ComplexMatrix c = random::gaussian_matrix(3, 1, rng);
    const ComplexMatrix left = kron(kron(a, b), c);
    const ComplexMatrix right = kron(a, kron(b, c));
    // Both sides equal their own evaluation order of the index formula.
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t k = 0; k < 2; ++k)
          for (std::size_t l = 0; l < 2; ++l)
            for (std::size_t m = 0; m < 3; ++m) {
              const std::size_t row = (i * 2 + k) * 3 + m;
              const std::size_t col = (j * 2 + l) * 1;
              EXPECT_EQ(left(row, col), (a(i, j) * b(k, l)) * c(m, 0));
              EXPECT_EQ(right(row, col), a(i, j) * (b(k, l) * c(m, 0)));
            }
    EXPECT_LT(max_abs_diff(left, right), 1e-14);
  }
}

TEST(PartialTraceTest, ProductInput) {
  std::mt19937_64 rng(3);
  const ComplexMatrix rho = random::random_mixed_state(2, rng).matrix();
  const ComplexMatrix sigma = random::random_mixed_state(2, rng).matrix() * cplx(3.0);
  const std::vector<std::size_t> dims = {2, 2};
  const ComplexMatrix out = partial_trace(kron(rho, sigma), dims, std::vector<std::size_t>{0});
  EXPECT_LT(max_abs_diff(out, rho * sigma.trace()), 1e-14);
}

TEST(PartialTraceTest, MaximallyEntangledMarginal) {
  const double h = 1.0 / std::sqrt(2.0);
  const std::vector<cplx> phi = {h, 0.0, 0.0, h};
  const std::vector<std::size_t> dims = {2, 2};
  const ComplexMatrix out = partial_trace(ComplexMatrix::outer(phi), dims, std::vector<std::size_t>{0});
  EXPECT_LT(max_abs_diff(out, ComplexMatrix::identity(2) * cplx(0.5)), 1e-15);
}

TEST(PartialTraceTest, FrozenHermitianValues) {
  const ComplexMatrix h = from_rows(4, {{0.062404, 0.000000},   {-0.771289, -1.721243}, {0.323976, 0.485363},
                                        {0.322914, -0.423791},  {-0.771289, 1.721243},  {-0.864798, 0.000000},
                                        {-0.106183, 1.092757},  {0.843144, -1.009245},  {0.323976, -0.485363},
                                        {-0.106183, -1.092757}, {1.769819, 0.000000},   {-0.310454, -0.291238},
                                        {0.322914, 0.423791},   {0.843144, 1.009245},   {-0.310454, 0.291238},
                                        {1.069805, 0.000000}});
  const std::vector<std::size_t> dims = {2, 2};
  const ComplexMatrix keep0 = from_rows(2, {{-0.802394, 0.0}, {1.16712, -0.523882}, {1.16712, 0.523882}, {2.839624, 0.0}});
  const ComplexMatrix keep1 =
      from_rows(2, {{1.832223, 0.0}, {-1.081743, -2.012481}, {-1.081743, 2.012481}, {0.205007, 0.0}});
  EXPECT_LT(max_abs_diff(partial_trace(h, dims, std::vector<std::size_t>{0}), keep0), 1e-12);
  EXPECT_LT(max_abs_diff(partial_trace(h, dims, std::vector<std::size_t>{1}), keep1), 1e-12);
  EXPECT_EQ(partial_trace(h, dims, std::vector<std::size_t>{0, 1}), h);
}

TEST(PartialTraceTest, MiddleSubsystemOfThree) {
  std::mt19937_64 rng(5);
  const ComplexMatrix a = random::random_mixed_state(2, rng).matrix();
  const ComplexMatrix b = random::random_mixed_state(3, rng).matrix();
  const ComplexMatrix c = random::random_mixed_state(2, rng).matrix();
  const std::vector<std::size_t> dims = {2, 3, 2};
  const ComplexMatrix out = partial_trace(kron(kron(a, b), c), dims, std::vector<std::size_t>{0, 2});
  EXPECT_LT(max_abs_diff(out, kron(a, c)), 1e-14);
}

TEST(PartialTraceTest, TraceOverEverythingIsScalarTrace) {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 100; ++t) {
    const std::vector<std::size_t> dims = {2, 1 + static_cast<std::size_t>(t % 4)};
    const ComplexMatrix m = random::gaussian_matrix(dims[0] * dims[1], dims[0] * dims[1], rng);
    const ComplexMatrix s = partial_trace(m, dims, std::vector<std::size_t>{});
    ASSERT_EQ(s.rows(), 1u);
    EXPECT_LT(std::abs(s(0, 0) - m.trace()), 1e-12);
  }
}

TEST(PartialTraceTest, RejectsBadDimensions) {
  const std::vector<std::size_t> dims = {2, 3};
  EXPECT_THROW(partial_trace(ComplexMatrix::identity(4), dims, std::vector<std::size_t>{0}), DimensionError);
  const std::vector<std::size_t> ok = {2, 2};
  EXPECT_THROW(partial_trace(ComplexMatrix::identity(4), ok, std::vector<std::size_t>{2}), DimensionError);
}

TEST(HermEigTest, Identity) {
  const auto e = herm_eigvals(ComplexMatrix::identity(2));
  EXPECT_DOUBLE_EQ(e[0], 1.0);
  EXPECT_DOUBLE_EQ(e[1], 1.0);
}

TEST(HermEigTest, PauliZ) {
  const auto e = herm_eigvals(pauli_z());
  EXPECT_DOUBLE_EQ(e[0], -1.0);
  EXPECT_DOUBLE_EQ(e[1], 1.0);
}

TEST(HermEigTest, PauliYAscending) {
  const auto e = herm_eig(testing::pauli_y());
  EXPECT_NEAR(e.eigenvalues[0], -1.0, 1e-14);
  EXPECT_NEAR(e.eigenvalues[1], 1.0, 1e-14);
}

void expect_reconstructs(const ComplexMatrix& h) {
  const std::size_t n = h.rows();
  const EigDecomposition e = herm_eig(h);
  for (std::size_t k = 1; k < n; ++k) EXPECT_LE(e.eigenvalues[k - 1], e.eigenvalues[k]);
  ComplexMatrix rec(n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        rec(i, j) += e.eigenvectors(i, k) * e.eigenvalues[k] * std::conj(e.eigenvectors(j, k));
  EXPECT_LT(max_abs_diff(rec, h), 1e-10);
  EXPECT_LT(max_abs_diff(adjoint_mul(e.eigenvectors, e.eigenvectors), ComplexMatrix::identity(n)), 1e-10);
}

TEST(HermEigTest, RandomSixBySix) {
  std::mt19937_64 rng(66);
  expect_reconstructs(random::random_hermitian(6, rng));
}

TEST(HermEigTest, ReconstructionOnRandomSamples) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) expect_reconstructs(random::random_hermitian(1 + t % 8, rng));
}

TEST(HermEigTest, DegenerateSpectrum) {
  std::mt19937_64 rng(8);
  const ComplexMatrix u = random::random_unitary(5, rng);
  const ComplexMatrix h = u * ComplexMatrix::diagonal({1.0, 1.0, 1.0, -2.0, -2.0}) * u.adjoint();
  expect_reconstructs(h);
  const auto e = herm_eigvals(h);
  EXPECT_NEAR(e[0], -2.0, 1e-12);
  EXPECT_NEAR(e[4], 1.0, 1e-12);
}

TEST(HermEigTest, RejectsNonHermitian) {
  ComplexMatrix m(2, 2);
  m(0, 1) = 1.0;
  EXPECT_THROW(herm_eig(m), ValidationError);
}

TEST(TraceNormTest, Identity) { EXPECT_NEAR(trace_norm(ComplexMatrix::identity(5)), 5.0, 1e-14); }

TEST(TraceNormTest, PauliZ) { EXPECT_NEAR(trace_norm(pauli_z()), 2.0, 1e-14); }

TEST(TraceNormTest, FrozenStateDifference) {
  const ComplexMatrix rho =
      from_rows(2, {{0.427002, 0.0}, {-0.278618, -0.13526}, {-0.278618, 0.13526}, {0.572998, 0.0}});
  const ComplexMatrix sigma =
      from_rows(2, {{0.415378, 0.0}, {0.128099, -0.262616}, {0.128099, 0.262616}, {0.584622, 0.0}});
  EXPECT_NEAR(trace_norm(rho - sigma), 0.852697803916487, 1e-12);
}

TEST(TraceNormTest, NonHermitianUsesSingularValues) {
  ComplexMatrix m(2, 2);
  m(0, 1) = 3.0;  // singular values 3, 0
  EXPECT_NEAR(trace_norm(m), 3.0, 1e-12);
}

TEST(TraceNormTest, BoundsAbsoluteTrace) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 100; ++t) {
    const ComplexMatrix a = random::gaussian_matrix(1 + t % 5, 1 + t % 5, rng);
    EXPECT_GE(trace_norm(a) + 1e-12, std::abs(a.trace()));
  }
}

TEST(RealLinalgTest, CholeskySolveAndInverse) {
  std::mt19937_64 rng(10);
  std::normal_distribution<double> g;
  RealMatrix b(4, 4);
  for (double& x : b.entries()) x = g(rng);
  RealMatrix a = b * b.transpose() + RealMatrix::identity(4);
  RealMatrix l;
  ASSERT_TRUE(cholesky(a, l));
  const RealMatrix inv = cholesky_inverse(l);
  RealMatrix prod = a * inv;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) EXPECT_NEAR(prod(i, j), i == j ? 1.0 : 0.0, 1e-12);
}

TEST(RealLinalgTest, CholeskyRejectsIndefinite) {
  RealMatrix a = RealMatrix::identity(2);
  a(1, 1) = -1.0;
  RealMatrix l;
  EXPECT_FALSE(cholesky(a, l));
}

TEST(RealLinalgTest, SymEigMatchesComplexSolver) {
  std::mt19937_64 rng(13);
  const ComplexMatrix h = random::random_hermitian(5, rng);
  RealMatrix r(5, 5);
  ComplexMatrix hr(5, 5);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) {
      r(i, j) = h(i, j).real();
      hr(i, j) = h(i, j).real();
    }
  const auto a = sym_eigvals(r);
  const auto b = herm_eigvals(hr);
  for (std::size_t k = 0; k < 5; ++k) EXPECT_NEAR(a[k], b[k], 1e-12);
}

}  // namespace
}  // namespace chanres

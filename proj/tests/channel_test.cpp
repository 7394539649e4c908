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

#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

#include "chanres/coherence.hpp"
#include "chanres/error.hpp"
#include "chanres/monotones.hpp"
#include "chanres/random.hpp"
#include "test_util.hpp"

namespace chanres {
namespace {

using testing::kPi;
using testing::plus_state;

bool is_valid_channel(const QChannel& c) {
  try {
    (void)QChannel::from_choi(c.choi(), c.dim_in(), c.dim_out());
    return true;
  } catch (const Error&) {
    return false;
  }
}

TEST(QStateTest, RejectsInvalidMatrices) {
  EXPECT_THROW(QState(ComplexMatrix::identity(2)), ValidationError);  // trace 2
  EXPECT_THROW(QState(ComplexMatrix::diagonal({1.5, -0.5})), ValidationError);
  ComplexMatrix m = ComplexMatrix::identity(2) * cplx(0.5);
  m(0, 1) = cplx(0.0, 0.1);
  EXPECT_THROW(QState{m}, ValidationError);  // not Hermitian
  EXPECT_THROW(QState(ComplexMatrix(2, 3)), DimensionError);
}

TEST(QStateTest, Constructors) {
  EXPECT_EQ(QState::basis(3, 1).matrix(), ComplexMatrix::diagonal({0.0, 1.0, 0.0}));
  EXPECT_LT(max_abs_diff(QState::maximally_mixed(4).matrix(), ComplexMatrix::identity(4) * cplx(0.25)), 1e-15);
  EXPECT_NEAR(plus_state().matrix()(0, 1).real(), 0.5, 1e-15);
  const std::vector<cplx> amps = {3.0, cplx(0.0, 4.0)};
  EXPECT_NEAR(QState::pure(amps).matrix()(1, 1).real(), 16.0 / 25.0, 1e-15);
}

TEST(FromKrausTest, IdentityChoiIsUnnormalizedBellProjector) {
  const QChannel id = QChannel::from_kraus({ComplexMatrix::identity(2)});
  ComplexMatrix expected(4, 4);
  for (std::size_t r : {0u, 3u})
    for (std::size_t c : {0u, 3u}) expected(r, c) = 1.0;
  EXPECT_LT(max_abs_diff(id.choi(), expected), 1e-15);
}

TEST(FromKrausTest, DephasingChoiIsDiagonal) {
  const QChannel d = QChannel::from_kraus({ComplexMatrix::diagonal({1.0, 0.0}), ComplexMatrix::diagonal({0.0, 1.0})});
  EXPECT_LT(max_abs_diff(d.choi(), ComplexMatrix::diagonal({1.0, 0.0, 0.0, 1.0})), 1e-15);
}

TEST(FromKrausTest, RejectsNonTracePreserving) {
  EXPECT_THROW(QChannel::from_kraus({ComplexMatrix::diagonal({1.0, 0.5})}), ValidationError);
}

TEST(FromKrausTest, ShapeErrorNamesTheOperator) {
  try {
    QChannel::from_kraus({ComplexMatrix::identity(2), ComplexMatrix(3, 2)});
    FAIL() << "expected DimensionError";
  } catch (const DimensionError& e) {
    EXPECT_NE(std::string(e.what()).find("kraus[1]"), std::string::npos) << e.what();
  }
}

TEST(FromKrausTest, RejectsEmptyList) { EXPECT_THROW(QChannel::from_kraus({}), Error); }

TEST(FromChoiTest, IdentityRoundTrip) {
  const QChannel back = QChannel::from_choi(identity_channel(2).choi(), 2, 2);
  std::mt19937_64 rng(1);
  for (int t = 0; t < 10; ++t) {
    const QState rho = random::random_mixed_state(2, rng);
    EXPECT_LT(max_abs_diff(apply(back, rho).matrix(), rho.matrix()), 1e-9);
  }
}

TEST(FromChoiTest, DephasingRoundTrip) {
  const QChannel back = QChannel::from_choi(dephasing_channel(2).choi(), 2, 2);
  EXPECT_LT(max_abs_diff(apply(back, plus_state()).matrix(), ComplexMatrix::identity(2) * cplx(0.5)), 1e-9);
}

TEST(FromChoiTest, RandomChannelsRoundTrip) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 100; ++t) {
    const std::size_t din = 1 + t % 4;
    const std::size_t dout = 1 + (t / 4) % 4;
    const QChannel n = random::random_channel(din, dout, 1 + t % 5, rng);
    const QChannel back = QChannel::from_choi(n.choi(), din, dout);
    EXPECT_LE(back.kraus().size(), din * dout);
    const QState rho = random::random_mixed_state(din, rng);
    EXPECT_LT(max_abs_diff(apply(n, rho).matrix(), apply(back, rho).matrix()), 1e-9);
    EXPECT_LT(max_abs_diff(apply(n, rho).matrix(), apply_via_choi(n, rho.matrix())), 1e-9);
  }
}

TEST(FromChoiTest, RejectsNonPositive) {
  ComplexMatrix j = identity_channel(2).choi();
  j(1, 1) = -0.5;
  j(2, 2) = 1.5;  // still trace preserving on block 0, not PSD
  EXPECT_THROW(QChannel::from_choi(j, 2, 2), ValidationError);
}

TEST(FromChoiTest, RejectsNonTracePreserving) {
  EXPECT_THROW(QChannel::from_choi(ComplexMatrix::identity(4) * cplx(0.9), 2, 2), ValidationError);
}

TEST(FromChoiTest, RejectsWrongShape) {
  EXPECT_THROW(QChannel::from_choi(ComplexMatrix::identity(4), 2, 3), DimensionError);
}

TEST(ApplyTest, IdentityLeavesStatesAlone) {
  std::mt19937_64 rng(3);
  const QState rho = random::random_mixed_state(3, rng);
  EXPECT_LT(max_abs_diff(apply(identity_channel(3), rho).matrix(), rho.matrix()), 1e-15);
}

TEST(ApplyTest, DephasingPlus) {
  EXPECT_LT(max_abs_diff(apply(dephasing_channel(2), plus_state()).matrix(), ComplexMatrix::identity(2) * cplx(0.5)),
            1e-15);
}

TEST(ApplyTest, RotationOnGroundState) {
  const QState out = apply(unitary_channel(rotation_unitary(kPi / 10)), QState::basis(2, 0));
  const std::vector<cplx> expected = {std::cos(kPi / 10), std::sin(kPi / 10)};
  EXPECT_LT(max_abs_diff(out.matrix(), QState::pure(expected).matrix()), 1e-14);
}

TEST(ApplyTest, RejectsDimensionMismatch) {
  EXPECT_THROW(apply(identity_channel(2), QState::basis(3, 0)), DimensionError);
}

TEST(TensorTest, IdentityTensorIdentity) {
  EXPECT_LT(max_abs_diff(tensor(identity_channel(2), identity_channel(2)).choi(), identity_channel(4).choi()), 1e-15);
}

TEST(TensorTest, ProductAction) {
  std::mt19937_64 rng(4);
  const QChannel n = random::random_channel(2, 3, 2, rng);
  const QState rho = random::random_mixed_state(2, rng);
  const QState sigma = random::random_mixed_state(2, rng);
  const QState out = apply(tensor(n, identity_channel(2)), tensor(rho, sigma));
  EXPECT_LT(max_abs_diff(out.matrix(), kron(apply(n, rho).matrix(), sigma.matrix())), 1e-12);
}

// Choi of N (x) M from the Chois of the factors by reordering
// (i1 a1)(i2 a2) -> (i1 i2)(a1 a2).
ComplexMatrix permuted_kron_choi(const QChannel& n, const QChannel& m) {
  const std::size_t in1 = n.dim_in(), out1 = n.dim_out(), in2 = m.dim_in(), out2 = m.dim_out();
  const ComplexMatrix k = kron(n.choi(), m.choi());
  const std::size_t dim = in1 * out1 * in2 * out2;
  auto from = [&](std::size_t i1, std::size_t a1, std::size_t i2, std::size_t a2) {
    return (i1 * out1 + a1) * in2 * out2 + i2 * out2 + a2;
  };
  auto to = [&](std::size_t i1, std::size_t a1, std::size_t i2, std::size_t a2) {
    return (i1 * in2 + i2) * out1 * out2 + a1 * out2 + a2;
  };
  ComplexMatrix j(dim, dim);
  for (std::size_t i1 = 0; i1 < in1; ++i1)
    for (std::size_t a1 = 0; a1 < out1; ++a1)
      for (std::size_t i2 = 0; i2 < in2; ++i2)
        for (std::size_t a2 = 0; a2 < out2; ++a2)
          for (std::size_t j1 = 0; j1 < in1; ++j1)
            for (std::size_t b1 = 0; b1 < out1; ++b1)
              for (std::size_t j2 = 0; j2 < in2; ++j2)
                for (std::size_t b2 = 0; b2 < out2; ++b2)
                  j(to(i1, a1, i2, a2), to(j1, b1, j2, b2)) = k(from(i1, a1, i2, a2), from(j1, b1, j2, b2));
  return j;
}

TEST(TensorTest, ChoiIsPermutedKronOfChois) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 10; ++t) {
    const QChannel n = random::random_channel(2, 1 + t % 3, 2, rng);
    const QChannel m = random::random_channel(1 + t % 2, 2, 3, rng);
    EXPECT_LT(max_abs_diff(tensor(n, m).choi(), permuted_kron_choi(n, m)), 1e-12);
  }
}

TEST(ComposeTest, DephasingIsIdempotent) {
  EXPECT_LT(max_abs_diff(compose(dephasing_channel(3), dephasing_channel(3)).choi(), dephasing_channel(3).choi()),
            1e-14);
}

TEST(ComposeTest, UnitaryThenInverse) {
  std::mt19937_64 rng(6);
  const ComplexMatrix u = random::random_unitary(3, rng);
  const QChannel c = compose(unitary_channel(u.adjoint()), unitary_channel(u));
  for (int t = 0; t < 5; ++t) {
    const QState rho = random::random_mixed_state(3, rng);
    EXPECT_LT(max_abs_diff(apply(c, rho).matrix(), rho.matrix()), 1e-12);
  }
}

TEST(ComposeTest, MatchesSequentialApply) {
  std::mt19937_64 rng(7);
  const QChannel first = random::random_channel(2, 3, 3, rng);
  const QChannel second = random::random_channel(3, 2, 4, rng);
  const QChannel c = compose(second, first);
  EXPECT_LE(c.kraus().size(), 4u);
  for (int t = 0; t < 20; ++t) {
    const QState rho = random::random_mixed_state(2, rng);
    EXPECT_LT(max_abs_diff(apply(c, rho).matrix(), apply(second, apply(first, rho)).matrix()), 1e-10);
  }
}

TEST(ComposeTest, RejectsMismatchedDimensions) {
  EXPECT_THROW(compose(identity_channel(2), identity_channel(3)), DimensionError);
}

TEST(ClosureTest, TensorAndComposeStayCptp) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 30; ++t) {
    const QChannel a = random::random_channel(2, 2, 1 + t % 4, rng);
    const QChannel b = random::random_channel(2, 2, 1 + (t + 2) % 4, rng);
    EXPECT_TRUE(is_valid_channel(tensor(a, b)));
    EXPECT_TRUE(is_valid_channel(compose(a, b)));
  }
}

TEST(ConstructorsTest, ConstantChannelOutputsItsState) {
  const QChannel g = constant_channel(plus_state(), 2);
  std::mt19937_64 rng(9);
  for (int t = 0; t < 5; ++t) {
    EXPECT_LT(max_abs_diff(apply(g, random::random_mixed_state(2, rng)).matrix(), plus_state().matrix()), 1e-14);
  }
}

TEST(ConstructorsTest, RotationEndpoints) {
  EXPECT_LT(max_abs_diff(rotation_unitary(0.0), ComplexMatrix::identity(2)), 1e-16);
  const QState out = apply(unitary_channel(rotation_unitary(kPi / 4)), QState::basis(2, 0));
  EXPECT_LT(max_abs_diff(out.matrix(), plus_state().matrix()), 1e-15);
}

TEST(ConstructorsTest, RotationMatchesExponentialOfPauliY) {
  // exp(-i t Y) = cos t I - i sin t Y.
  const double t = 0.37;
  const ComplexMatrix expected = ComplexMatrix::identity(2) * cplx(std::cos(t)) +
                                 testing::pauli_y() * cplx(0.0, -std::sin(t));
  EXPECT_LT(max_abs_diff(rotation_unitary(t), expected), 1e-15);
}

TEST(ConstructorsTest, UnitaryChannelRejectsNonUnitary) {
  EXPECT_THROW(unitary_channel(ComplexMatrix::diagonal({1.0, 2.0})), ValidationError);
}

TEST(ConstructorsTest, AppendAndDiscard) {
  std::mt19937_64 rng(10);
  const QState rho = random::random_mixed_state(2, rng);
  const QState sigma = random::random_mixed_state(3, rng);
  const QState joint = apply(append_state_channel(2, sigma), rho);
  EXPECT_LT(max_abs_diff(joint.matrix(), kron(rho.matrix(), sigma.matrix())), 1e-14);
  EXPECT_LT(max_abs_diff(apply(discard_channel(2, 3), joint).matrix(), rho.matrix()), 1e-14);
}

TEST(SuperOpTest, TrivialSuperOpReturnsChannel) {
  std::mt19937_64 rng(11);
  const QChannel n = random::random_channel(2, 2, 2, rng);
  const FreeSuperOp s{identity_channel(2), identity_channel(2), 1};
  EXPECT_LT(max_abs_diff(superop_apply(s, n).choi(), n.choi()), 1e-14);
}

TEST(SuperOpTest, ConstantPostChannelAbsorbs) {
  std::mt19937_64 rng(12);
  const QChannel n = random::random_channel(2, 2, 3, rng);
  const QState delta = QState::basis(2, 1);
  const FreeSuperOp s{append_state_channel(2, QState::basis(2, 0)), constant_channel(delta, 4), 2};
  EXPECT_LT(max_abs_diff(superop_apply(s, n).choi(), constant_channel(delta, 2).choi()), 1e-13);
}

TEST(SuperOpTest, SampledFreeSuperOpsPreserveMio) {
  for (int t = 0; t < 50; ++t) {
    const std::size_t d = 2 + t % 2;
    const QChannel n = coherence::sample_free_channel(d, 1000 + t);
    const FreeSuperOp s = monotones::sample_free_superop(n, 2000 + t);
    const QChannel image = superop_apply(s, n);
    EXPECT_TRUE(is_valid_channel(image));
    EXPECT_TRUE(coherence::is_mio(image, 1e-8)) << "sample " << t;
  }
}

TEST(SuperOpTest, SampledSuperOpsOnRotationStayValid) {
  const QChannel rot = unitary_channel(rotation_unitary(kPi / 10));
  for (int t = 0; t < 20; ++t) {
    EXPECT_TRUE(is_valid_channel(superop_apply(monotones::sample_free_superop(rot, 3000 + t), rot)));
  }
}

TEST(SuperOpTest, RejectsMismatchedAncilla) {
  const FreeSuperOp s{identity_channel(4), identity_channel(4), 3};
  EXPECT_THROW(superop_apply(s, identity_channel(2)), DimensionError);
}

}  // namespace
}  // namespace chanres

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

#include <cstdint>
#include <limits>
#include <vector>

#include "chanres/channel.hpp"

// State-level coherence theory in a fixed computational basis. All
// entropies are in bits.
namespace chanres::coherence {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
// Support test for relative entropy: sigma-eigenvalues below this count as
// zero...
inline constexpr double kSupportEigenCutoff = 1e-12;
// ...and rho carrying more than this weight there gives +infinity.
inline constexpr double kSupportWeightCutoff = 1e-10;

QState dephase(const QState& rho);
double von_neumann_entropy(const QState& rho);
// +infinity when supp(rho) is not contained in supp(sigma).
double rel_entropy(const QState& rho, const QState& sigma);
// Relative entropy of coherence S(Delta(rho)) - S(rho).
double c_r(const QState& rho);
bool is_incoherent(const QState& rho, double tol);
// Every basis state maps to an incoherent state.
bool is_mio(const QChannel& n, double tol);

// Matrix-level versions for callers that already hold a density operator
// (no validation).
double entropy_bits(const ComplexMatrix& rho);
double shannon_of_diagonal(const ComplexMatrix& rho);
double c_r_matrix(const ComplexMatrix& rho);

enum class FreeComponent {
  kPermutationPhase,  // unitary permutation with diagonal phases
  kDephasing,
  kConstantDiagonal,  // constant channel to an incoherent state
};

struct FreeChannelRecipe {
  std::vector<FreeComponent> components;
  std::vector<double> weights;  // nonnegative, summing to 1
};

// Builds the convex mixture described by `recipe`; the random parts of
// each component come from `seed`.
QChannel free_channel_mixture(std::size_t d, const FreeChannelRecipe& recipe, std::uint64_t seed);

// Random MIO channel on C^d: a Dirichlet mixture of 2-4 components drawn
// from FreeComponent. Deterministic in the seed.
QChannel sample_free_channel(std::size_t d, std::uint64_t seed);

}  // namespace chanres::coherence

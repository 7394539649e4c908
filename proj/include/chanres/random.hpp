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
#include <random>
#include <vector>

#include "chanres/channel.hpp"

// Seeded generators for test inputs. Everything here is deterministic in
// the generator state.
namespace chanres::random {

// SplitMix64 finalizer; derives independent seeds from (base, index).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

std::vector<cplx> gaussian_vector(std::size_t n, std::mt19937_64& rng);
ComplexMatrix gaussian_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng);
ComplexMatrix random_hermitian(std::size_t n, std::mt19937_64& rng);
// Haar-distributed unitary (QR of a Ginibre matrix with phase fix).
ComplexMatrix random_unitary(std::size_t n, std::mt19937_64& rng);
// Columns of a rows x cols Ginibre matrix made orthonormal (rows >= cols).
ComplexMatrix random_isometry(std::size_t rows, std::size_t cols, std::mt19937_64& rng);

QState random_pure_state(std::size_t d, std::mt19937_64& rng);
// Ginibre-induced mixed state of full rank (almost surely).
QState random_mixed_state(std::size_t d, std::mt19937_64& rng);
// Channel whose Kraus operators are the dim_out-row blocks of a random
// isometry C^{dim_in} -> C^{dim_out * kraus_count}. kraus_count is raised
// to ceil(dim_in / dim_out) when smaller.
QChannel random_channel(std::size_t dim_in, std::size_t dim_out, std::size_t kraus_count, std::mt19937_64& rng);

}  // namespace chanres::random

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
#include <string_view>
#include <vector>

#include "chanres/linalg.hpp"

// Small dense semidefinite programs in standard primal form
//
//   minimize   f_0(X)
//   subject to f_k(X) = b_k,   X = diag(X_1, ..., X_p) with every X_i >= 0,
//
// where each f is a real linear functional of the block-diagonal variable.
// Blocks are either real symmetric or complex Hermitian; Hermitian blocks
// are solved through their real embedding.
namespace chanres::sdp {

enum class BlockKind { kRealSymmetric, kHermitian };

struct Block {
  std::size_t dim = 0;
  BlockKind kind = BlockKind::kRealSymmetric;
};

// Contributes Re(conj(value) * X_block(row, col)) to a functional. On a
// real block only value.real() matters.
struct Entry {
  std::size_t block = 0;
  std::size_t row = 0;
  std::size_t col = 0;
  cplx value = 0.0;
};

struct LinearFunctional {
  std::vector<Entry> entries;

  void add(std::size_t block, std::size_t row, std::size_t col, cplx value) {
    entries.push_back({block, row, col, value});
  }
};

struct EqualityConstraint {
  LinearFunctional functional;
  double rhs = 0.0;
};

struct SdpProblem {
  std::vector<Block> blocks;
  LinearFunctional objective;  // minimized
  std::vector<EqualityConstraint> constraints;

  std::size_t add_block(std::size_t dim, BlockKind kind) {
    blocks.push_back({dim, kind});
    return blocks.size() - 1;
  }
  void add_constraint(LinearFunctional f, double rhs) { constraints.push_back({std::move(f), rhs}); }
};

enum class SdpStatus { kOptimal, kMaxIterations, kInfeasible };

std::string_view to_string(SdpStatus s);

struct SdpSolution {
  double primal_value = 0.0;
  double dual_value = 0.0;
  // One matrix per block; real blocks carry zero imaginary parts.
  std::vector<ComplexMatrix> primal_point;
  std::vector<double> dual_multipliers;
  SdpStatus status = SdpStatus::kMaxIterations;
  int iterations = 0;
  // max_k |f_k(X) - b_k| at the returned point.
  double primal_residual = 0.0;
  // |primal - dual| / (1 + |primal|).
  double relative_gap = 0.0;
};

struct SolverOptions {
  int max_iterations = 200;
  double tolerance = 1e-8;
};

// Throws DimensionError when a functional references a block or an index
// that does not exist.
SdpSolution solve(const SdpProblem& problem, const SolverOptions& options = {});

double evaluate(const LinearFunctional& f, const std::vector<ComplexMatrix>& point);

// [[Re h, -Im h], [Im h, Re h]]. Throws ValidationError for non-Hermitian h.
RealMatrix complex_to_real_embedding(const ComplexMatrix& h);
// Inverse of the embedding; averages the two copies so any real
// symmetric input maps to the nearest embedded Hermitian matrix.
ComplexMatrix real_to_complex_embedding(const RealMatrix& y);

}  // namespace chanres::sdp

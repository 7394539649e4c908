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
#include <span>
#include <utility>
#include <vector>

#include "chanres/channel.hpp"
#include "chanres/sdp.hpp"

// Channel coherence quantifiers (all in bits) and the rate bounds they
// imply for distillation and dilution of channel coherence.
namespace chanres::monotones {

// Knobs for the coherence-boosting search over pure inputs on A (x) E.
struct SearchConfig {
  std::size_t ancilla_dim = 0;  // 0 selects the channel's input dimension
  int restarts = 64;            // random starts, on top of the structured ones
  int max_ascent_steps = 500;
  double step_tolerance = 1e-9;  // stop once one accepted step gains less
  std::uint64_t rng_seed = 0;
  int threads = 0;  // 0 = hardware concurrency; results do not depend on it
};

std::size_t resolved_ancilla_dim(const QChannel& n, const SearchConfig& cfg);

// Coherence generating power: max_i C_r(N(|i><i|)). Exact.
double c_r_i(const QChannel& n);
// Upper bound on |c_r_i(N) - c_r_i(M)| for channels at diamond distance
// at most eps: with T = eps / 2, twice the Fannes-Audenaert bound
// T log2(d - 1) + h2(T), capped at log2(d).
double c_r_i_continuity_bound(double eps, std::size_t dim_out);
// Index attaining c_r_i (smallest within 1e-12).
std::size_t c_r_i_argmax(const QChannel& n);

struct BoostResult {
  double value = 0.0;  // re-evaluated at the witness
  QState witness = QState::basis(1, 0);  // pure input on A (x) E
  std::size_t ancilla_dim = 1;
};

// Certified lower bound on the coherence boosting power
//   max_rho C_r((N (x) id_E)(rho)) - C_r(rho).
// `extra_starts` are additional unnormalized amplitude vectors of length
// dim_in * ancilla_dim seeded into the restart pool.
BoostResult c_r_b_lower(const QChannel& n, const SearchConfig& cfg,
                        std::span<const std::vector<cplx>> extra_starts = {});

// Start for the search on N (x) M built from witnesses of N and M: the
// product input reordered from (A1 E1)(A2 E2) to (A1 A2)(E1 E2), for use
// with ancilla dimension a.ancilla_dim * b.ancilla_dim.
std::vector<cplx> product_start(const BoostResult& a, std::size_t dim_in_a, const BoostResult& b,
                                std::size_t dim_in_b);

// Objective of the boosting search at a given input state on A (x) E.
double boost_objective(const QChannel& n, const QState& input, std::size_t ancilla_dim);

struct SdpValue {
  double value = 0.0;
  sdp::SdpSolution solution;
};

// log2 of the smallest lambda such that lambda * M - N is completely
// positive for some MIO channel M. Throws NumericalError when the solver
// does not reach optimality.
double c_max(const QChannel& n, const sdp::SolverOptions& opt = {});
SdpValue c_max_detailed(const QChannel& n, const sdp::SolverOptions& opt = {});
// The same SDP as c_max, returned un-solved; exposed for cross-checks.
sdp::SdpProblem c_max_problem(const QChannel& n);

// Largest Choi dimension c_max_tensor accepts.
inline constexpr std::size_t kMaxTensorChoiDim = 64;

// c_max(n^{(x) copies}) / copies. Throws DimensionError when the Choi
// matrix of the tensor power exceeds kMaxTensorChoiDim.
double c_max_tensor(const QChannel& n, int copies, const sdp::SolverOptions& opt = {});

// Diamond norm of the Hermiticity-preserving map whose Choi matrix is
// `delta_choi` (dim_in * dim_out square).
double diamond_norm(const ComplexMatrix& delta_choi, std::size_t dim_in, std::size_t dim_out,
                    const sdp::SolverOptions& opt = {});
double diamond_distance(const QChannel& n, const QChannel& m, const sdp::SolverOptions& opt = {});

struct MonotoneReport {
  double c_r_i = 0.0;
  double c_r_b_lower = 0.0;
  QState c_r_b_witness = QState::basis(1, 0);
  double c_max = 0.0;
  double distill_parallel = 0.0;
  double distill_iterative_lower = 0.0;
  std::pair<double, double> dilute_interval{0.0, 0.0};
  double irreversibility_gap_lower = 0.0;
  SearchConfig config;  // with ancilla_dim resolved
};

MonotoneReport analyze(const QChannel& n, const SearchConfig& cfg, const sdp::SolverOptions& opt = {});

struct MonotonicityOptions {
  bool check_boost = true;
  SearchConfig search{};  // used for both sides of the boosting check
  double c_r_i_tolerance = 1e-8;
  double c_r_b_tolerance = 2e-3;
};

struct MonotonicityReport {
  int trials = 0;
  int c_r_i_violations = 0;
  int c_r_b_violations = 0;
  // Largest observed value of monotone(Lambda(N)) - monotone(N).
  double worst_c_r_i_margin = -1.0;
  double worst_c_r_b_margin = -1.0;
};

// Draws `trials` free super-operations (MIO pre/post, ancilla 1 or 2) and
// checks that neither monotone increases.
MonotonicityReport verify_monotonicity(const QChannel& n, int trials, std::uint64_t rng_seed,
                                       const MonotonicityOptions& opt = {});

// One free super-operation drawn the way verify_monotonicity draws them.
FreeSuperOp sample_free_superop(const QChannel& n, std::uint64_t seed);

}  // namespace chanres::monotones

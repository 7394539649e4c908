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

#include "chanres/monotones.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <thread>

#include "chanres/coherence.hpp"
#include "chanres/error.hpp"
#include "chanres/random.hpp"

namespace chanres::monotones {

namespace {

constexpr double kTieTolerance = 1e-12;
constexpr double kFiniteDifferenceStep = 1e-5;
constexpr double kArmijo = 1e-4;
constexpr double kMinLineStep = 1e-14;

// Re/Im functional pair for one complex entry of a Hermitian block.
void constrain_complex_entry(sdp::SdpProblem& p, std::size_t block, std::size_t r, std::size_t c, cplx target) {
  sdp::LinearFunctional re, im;
  re.add(block, r, c, 1.0);
  im.add(block, r, c, cplx(0.0, 1.0));
  p.add_constraint(std::move(re), target.real());
  p.add_constraint(std::move(im), target.imag());
}

// ---------------------------------------------------------------------------
// Boosting search

// Pure-input objective on A (x) E, evaluated with vector arithmetic:
// the output is sum_k (K_k psi)(K_k psi)^dagger and the input is pure, so
// its coherence is the Shannon entropy of |psi_i|^2.
class BoostObjective {
 public:
  BoostObjective(const QChannel& n, std::size_t ancilla) : dim_(n.dim_in() * ancilla), out_dim_(n.dim_out() * ancilla) {
    const ComplexMatrix id = ComplexMatrix::identity(ancilla);
    for (const ComplexMatrix& k : n.kraus()) kraus_.push_back(kron(k, id));
  }

  std::size_t dim() const { return dim_; }

  // `x` holds 2 * dim reals (re parts then im parts); normalized inside.
  double operator()(const std::vector<double>& x) const {
    std::vector<cplx> psi(dim_);
    double norm = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
      psi[i] = cplx(x[i], x[i + dim_]);
      norm += std::norm(psi[i]);
    }
    const double inv = 1.0 / norm;
    double h_in = 0.0;
    for (const cplx& a : psi) {
      const double p = std::norm(a) * inv;
      if (p > 0.0) h_in -= p * std::log2(p);
    }
    ComplexMatrix out(out_dim_, out_dim_);
    std::vector<cplx> phi(out_dim_);
    for (const ComplexMatrix& k : kraus_) {
      for (std::size_t a = 0; a < out_dim_; ++a) {
        cplx s = 0.0;
        for (std::size_t i = 0; i < dim_; ++i) s += k(a, i) * psi[i];
        phi[a] = s;
      }
      for (std::size_t a = 0; a < out_dim_; ++a)
        for (std::size_t b = a; b < out_dim_; ++b) out(a, b) += phi[a] * std::conj(phi[b]) * inv;
    }
    for (std::size_t a = 0; a < out_dim_; ++a)
      for (std::size_t b = 0; b < a; ++b) out(a, b) = std::conj(out(b, a));
    return coherence::c_r_matrix(out) - h_in;
  }

 private:
  std::size_t dim_;
  std::size_t out_dim_;
  std::vector<ComplexMatrix> kraus_;
};

void normalize(std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  s = std::sqrt(s);
  for (double& v : x) v /= s;
}

struct AscentResult {
  double value;
  std::vector<double> point;
};

// Projected gradient ascent on the unit sphere with finite-difference
// gradients and Armijo backtracking.
AscentResult ascend(const BoostObjective& f, std::vector<double> x, const SearchConfig& cfg) {
  const std::size_t n = x.size();
  const std::size_t d = n / 2;
  normalize(x);
  double fx = f(x);
  double step = 1.0;
  std::vector<double> grad(n), trial(n), probe = x;
  for (int it = 0; it < cfg.max_ascent_steps; ++it) {
    for (std::size_t p = 0; p < n; ++p) {
      probe[p] = x[p] + kFiniteDifferenceStep;
      const double up = f(probe);
      probe[p] = x[p] - kFiniteDifferenceStep;
      const double down = f(probe);
      probe[p] = x[p];
      grad[p] = (up - down) / (2.0 * kFiniteDifferenceStep);
    }
    // Remove the radial and global-phase directions.
    double radial = 0.0, phase = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      radial += grad[i] * x[i] + grad[i + d] * x[i + d];
      phase += -grad[i] * x[i + d] + grad[i + d] * x[i];
    }
    for (std::size_t i = 0; i < d; ++i) {
      grad[i] -= radial * x[i] - phase * x[i + d];
      grad[i + d] -= radial * x[i + d] + phase * x[i];
    }
    double g2 = 0.0;
    for (double g : grad) g2 += g * g;
    if (g2 < 1e-24) break;

    step = std::min(step * 2.0, 1.0);
    bool accepted = false;
    double ft = fx;
    while (step >= kMinLineStep) {
      for (std::size_t p = 0; p < n; ++p) trial[p] = x[p] + step * grad[p];
      normalize(trial);
      ft = f(trial);
      if (ft >= fx + kArmijo * step * g2) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    const double gain = ft - fx;
    x = trial;
    probe = x;
    fx = ft;
    if (gain < cfg.step_tolerance) break;
  }
  return {fx, x};
}

std::vector<double> to_real(std::span<const cplx> v) {
  std::vector<double> x(2 * v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    x[i] = v[i].real();
    x[i + v.size()] = v[i].imag();
  }
  return x;
}

std::vector<cplx> to_complex(const std::vector<double>& x) {
  const std::size_t d = x.size() / 2;
  std::vector<cplx> v(d);
  for (std::size_t i = 0; i < d; ++i) v[i] = cplx(x[i], x[i + d]);
  return v;
}

}  // namespace

std::size_t resolved_ancilla_dim(const QChannel& n, const SearchConfig& cfg) {
  return cfg.ancilla_dim == 0 ? n.dim_in() : cfg.ancilla_dim;
}

double c_r_i_continuity_bound(double eps, std::size_t dim_out) {
  if (!(eps >= 0.0)) throw ValidationError("continuity bound: eps must be nonnegative");
  if (dim_out == 0) throw DimensionError("continuity bound: zero dimension");
  const double d = static_cast<double>(dim_out);
  const double cap = std::log2(d);
  const double t = eps / 2.0;
  if (dim_out == 1) return 0.0;
  if (t >= 1.0 - 1.0 / d) return cap;
  const double h2 = t == 0.0 ? 0.0 : -t * std::log2(t) - (1.0 - t) * std::log2(1.0 - t);
  const double per_entropy = t * std::log2(d - 1.0) + h2;
  return std::min(cap, 2.0 * per_entropy);
}

std::size_t c_r_i_argmax(const QChannel& n) {
  std::size_t best_index = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < n.dim_in(); ++i) {
    const double v = coherence::c_r_matrix(apply_operator(n, QState::basis(n.dim_in(), i).matrix()));
    if (v > best + kTieTolerance) {
      best = v;
      best_index = i;
    }
  }
  return best_index;
}

double c_r_i(const QChannel& n) {
  if (n.dim_out() == 1) return 0.0;
  const std::size_t i = c_r_i_argmax(n);
  return coherence::c_r(apply(n, QState::basis(n.dim_in(), i)));
}

double boost_objective(const QChannel& n, const QState& input, std::size_t ancilla_dim) {
  const QChannel widened = ancilla_dim == 1 ? n : tensor(n, identity_channel(ancilla_dim));
  return coherence::c_r(apply(widened, input)) - coherence::c_r(input);
}

BoostResult c_r_b_lower(const QChannel& n, const SearchConfig& cfg, std::span<const std::vector<cplx>> extra_starts) {
  const std::size_t ancilla = resolved_ancilla_dim(n, cfg);
  const std::size_t dim = n.dim_in() * ancilla;
  if (n.dim_out() == 1) return {0.0, QState::basis(dim, 0), ancilla};
  if (cfg.restarts < 0 || cfg.max_ascent_steps < 1) throw ValidationError("c_r_b_lower: invalid search configuration");

  // Restart pool: basis states, the maximally coherent input, seeds, then
  // random Gaussian amplitudes.
  std::vector<std::vector<double>> starts;
  for (std::size_t i = 0; i < dim; ++i) {
    std::vector<double> e(2 * dim, 0.0);
    e[i] = 1.0;
    starts.push_back(std::move(e));
  }
  starts.push_back(to_real(std::vector<cplx>(dim, 1.0)));
  for (const auto& s : extra_starts) {
    if (s.size() != dim) {
      throw DimensionError("c_r_b_lower: seeded start has length " + std::to_string(s.size()) + ", expected " +
                           std::to_string(dim));
    }
    starts.push_back(to_real(s));
  }
  for (int r = 0; r < cfg.restarts; ++r) {
    std::mt19937_64 rng(random::derive_seed(cfg.rng_seed, static_cast<std::uint64_t>(r)));
    starts.push_back(to_real(random::gaussian_vector(dim, rng)));
  }

  const BoostObjective objective(n, ancilla);
  std::vector<AscentResult> results(starts.size());
  unsigned workers = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads) : std::thread::hardware_concurrency();
  workers = std::clamp<unsigned>(workers, 1, static_cast<unsigned>(starts.size()));
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t s = w; s < starts.size(); s += workers) results[s] = ascend(objective, starts[s], cfg);
      });
    }
  }

  std::size_t best = 0;
  for (std::size_t s = 1; s < results.size(); ++s)
    if (results[s].value > results[best].value) best = s;

  QState witness = QState::pure(to_complex(results[best].point));
  const double value = boost_objective(n, witness, ancilla);
  return {value, std::move(witness), ancilla};
}

sdp::SdpProblem c_max_problem(const QChannel& n) {
  // Variables: S = K - J >= 0 (Hermitian) and lambda >= 0. Then K >= J >= 0
  // holds automatically, Tr_out K = lambda I becomes Tr_out S = (lambda - 1) I,
  // and the MIO condition fixes the off-diagonal entries of every diagonal
  // input-block of S to minus those of J.
  const std::size_t din = n.dim_in();
  const std::size_t dout = n.dim_out();
  const ComplexMatrix& j = n.choi();
  sdp::SdpProblem p;
  const std::size_t s_block = p.add_block(din * dout, sdp::BlockKind::kHermitian);
  const std::size_t l_block = p.add_block(1, sdp::BlockKind::kRealSymmetric);
  p.objective.add(l_block, 0, 0, 1.0);

  for (std::size_t i = 0; i < din; ++i) {
    sdp::LinearFunctional diag;
    for (std::size_t a = 0; a < dout; ++a) diag.add(s_block, i * dout + a, i * dout + a, 1.0);
    diag.add(l_block, 0, 0, -1.0);
    p.add_constraint(std::move(diag), -1.0);
    for (std::size_t k = i + 1; k < din; ++k) {
      sdp::LinearFunctional re, im;
      for (std::size_t a = 0; a < dout; ++a) {
        re.add(s_block, i * dout + a, k * dout + a, 1.0);
        im.add(s_block, i * dout + a, k * dout + a, cplx(0.0, 1.0));
      }
      p.add_constraint(std::move(re), 0.0);
      p.add_constraint(std::move(im), 0.0);
    }
  }
  for (std::size_t i = 0; i < din; ++i)
    for (std::size_t a = 0; a < dout; ++a)
      for (std::size_t b = a + 1; b < dout; ++b)
        constrain_complex_entry(p, s_block, i * dout + a, i * dout + b, -j(i * dout + a, i * dout + b));
  return p;
}

SdpValue c_max_detailed(const QChannel& n, const sdp::SolverOptions& opt) {
  if (n.dim_out() == 1) return {0.0, {}};
  sdp::SdpSolution sol = sdp::solve(c_max_problem(n), opt);
  if (sol.status != sdp::SdpStatus::kOptimal) {
    throw NumericalError("c_max: SDP ended with status " + std::string(sdp::to_string(sol.status)));
  }
  const double lambda = sol.primal_value;
  return {std::max(std::log2(lambda), 0.0), std::move(sol)};
}

double c_max(const QChannel& n, const sdp::SolverOptions& opt) { return c_max_detailed(n, opt).value; }

double c_max_tensor(const QChannel& n, int copies, const sdp::SolverOptions& opt) {
  if (copies < 1) throw ValidationError("c_max_tensor: copies must be positive");
  std::size_t choi_dim = 1;
  for (int c = 0; c < copies; ++c) {
    choi_dim *= n.dim_in() * n.dim_out();
    if (choi_dim > kMaxTensorChoiDim) {
      throw DimensionError("c_max_tensor: Choi dimension of " + std::to_string(copies) + " copies exceeds " +
                           std::to_string(kMaxTensorChoiDim));
    }
  }
  QChannel power = n;
  for (int c = 1; c < copies; ++c) power = tensor(power, n);
  return c_max(power, opt) / copies;
}

double diamond_norm(const ComplexMatrix& delta_choi, std::size_t dim_in, std::size_t dim_out,
                    const sdp::SolverOptions& opt) {
  const std::size_t n = dim_in * dim_out;
  if (delta_choi.rows() != n || delta_choi.cols() != n) {
    throw DimensionError("diamond_norm: Choi matrix must be " + std::to_string(n) + " square");
  }
  if (!delta_choi.is_hermitian(1e-9)) throw ValidationError("diamond_norm: Choi matrix is not Hermitian");

  // minimize (t0 + t1) / 2 over Z = [[Y0, -J], [-J^dagger, Y1]] >= 0 with
  // t_s I - Tr_out Y_s = P_s >= 0.
  sdp::SdpProblem p;
  const std::size_t z = p.add_block(2 * n, sdp::BlockKind::kHermitian);
  const std::size_t pb[2] = {p.add_block(dim_in, sdp::BlockKind::kHermitian),
                             p.add_block(dim_in, sdp::BlockKind::kHermitian)};
  const std::size_t tb[2] = {p.add_block(1, sdp::BlockKind::kRealSymmetric),
                             p.add_block(1, sdp::BlockKind::kRealSymmetric)};
  p.objective.add(tb[0], 0, 0, 0.5);
  p.objective.add(tb[1], 0, 0, 0.5);

  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) constrain_complex_entry(p, z, r, n + c, -delta_choi(r, c));

  for (int s = 0; s < 2; ++s) {
    const std::size_t off = s * n;
    for (std::size_t i = 0; i < dim_in; ++i) {
      sdp::LinearFunctional diag;
      for (std::size_t a = 0; a < dim_out; ++a) diag.add(z, off + i * dim_out + a, off + i * dim_out + a, 1.0);
      diag.add(pb[s], i, i, 1.0);
      diag.add(tb[s], 0, 0, -1.0);
      p.add_constraint(std::move(diag), 0.0);
      for (std::size_t k = i + 1; k < dim_in; ++k) {
        sdp::LinearFunctional re, im;
        for (std::size_t a = 0; a < dim_out; ++a) {
          re.add(z, off + i * dim_out + a, off + k * dim_out + a, 1.0);
          im.add(z, off + i * dim_out + a, off + k * dim_out + a, cplx(0.0, 1.0));
        }
        re.add(pb[s], i, k, 1.0);
        im.add(pb[s], i, k, cplx(0.0, 1.0));
        p.add_constraint(std::move(re), 0.0);
        p.add_constraint(std::move(im), 0.0);
      }
    }
  }

  const sdp::SdpSolution sol = sdp::solve(p, opt);
  if (sol.status != sdp::SdpStatus::kOptimal) {
    throw NumericalError("diamond_norm: SDP ended with status " + std::string(sdp::to_string(sol.status)));
  }
  return std::max(sol.primal_value, 0.0);
}

double diamond_distance(const QChannel& n, const QChannel& m, const sdp::SolverOptions& opt) {
  if (n.dim_in() != m.dim_in() || n.dim_out() != m.dim_out()) {
    throw DimensionError("diamond_distance: channels map " + std::to_string(n.dim_in()) + "->" +
                         std::to_string(n.dim_out()) + " and " + std::to_string(m.dim_in()) + "->" +
                         std::to_string(m.dim_out()));
  }
  return diamond_norm(n.choi() - m.choi(), n.dim_in(), n.dim_out(), opt);
}

std::vector<cplx> product_start(const BoostResult& a, std::size_t dim_in_a, const BoostResult& b,
                                std::size_t dim_in_b) {
  const std::size_t e1 = a.ancilla_dim;
  const std::size_t e2 = b.ancilla_dim;
  if (a.witness.dim() != dim_in_a * e1 || b.witness.dim() != dim_in_b * e2) {
    throw DimensionError("product_start: witness dimension does not match dim_in * ancilla_dim");
  }
  auto amplitudes = [](const QState& w) {
    const EigDecomposition e = herm_eig(w.matrix());
    const std::size_t top = e.eigenvalues.size() - 1;
    std::vector<cplx> v(w.dim());
    for (std::size_t i = 0; i < w.dim(); ++i) v[i] = e.eigenvectors(i, top);
    return v;
  };
  const auto v1 = amplitudes(a.witness);
  const auto v2 = amplitudes(b.witness);
  std::vector<cplx> out(v1.size() * v2.size());
  for (std::size_t i1 = 0; i1 < dim_in_a; ++i1)
    for (std::size_t i2 = 0; i2 < dim_in_b; ++i2)
      for (std::size_t j1 = 0; j1 < e1; ++j1)
        for (std::size_t j2 = 0; j2 < e2; ++j2)
          out[((i1 * dim_in_b + i2) * e1 + j1) * e2 + j2] = v1[i1 * e1 + j1] * v2[i2 * e2 + j2];
  return out;
}

MonotoneReport analyze(const QChannel& n, const SearchConfig& cfg, const sdp::SolverOptions& opt) {
  MonotoneReport r;
  r.config = cfg;
  r.config.ancilla_dim = resolved_ancilla_dim(n, cfg);
  if (n.dim_out() == 1) {
    r.c_r_b_witness = QState::basis(n.dim_in() * r.config.ancilla_dim, 0);
    return r;
  }
  r.c_r_i = c_r_i(n);
  BoostResult boost = c_r_b_lower(n, r.config);
  r.c_r_b_lower = boost.value;
  r.c_r_b_witness = std::move(boost.witness);
  r.c_max = c_max(n, opt);
  r.distill_parallel = r.c_r_i;
  r.distill_iterative_lower = r.c_r_b_lower;
  r.dilute_interval = {r.c_r_b_lower, r.c_max};
  r.irreversibility_gap_lower = r.c_r_b_lower - r.c_r_i;
  return r;
}

FreeSuperOp sample_free_superop(const QChannel& n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::size_t ancilla = std::uniform_int_distribution<int>(1, 2)(rng);
  const std::size_t wide_in = n.dim_in() * ancilla;
  const std::size_t wide_out = n.dim_out() * ancilla;

  // pre: append |0> on the ancilla, then a sampled MIO on the widened input.
  QChannel pre = ancilla == 1 ? identity_channel(n.dim_in())
                              : append_state_channel(n.dim_in(), QState::basis(ancilla, 0));
  if (wide_in >= 2) pre = compose(coherence::sample_free_channel(wide_in, rng()), pre);
  // post: a sampled MIO on the widened output, then discard the ancilla.
  QChannel post = wide_out >= 2 ? coherence::sample_free_channel(wide_out, rng()) : identity_channel(wide_out);
  if (ancilla > 1) post = compose(discard_channel(n.dim_out(), ancilla), post);
  return {std::move(pre), std::move(post), ancilla};
}

MonotonicityReport verify_monotonicity(const QChannel& n, int trials, std::uint64_t rng_seed,
                                       const MonotonicityOptions& opt) {
  if (trials < 1) throw ValidationError("verify_monotonicity: trials must be at least 1");
  MonotonicityReport rep;
  const double base_i = c_r_i(n);
  double base_b = 0.0;
  if (opt.check_boost) base_b = c_r_b_lower(n, opt.search).value;
  for (int t = 0; t < trials; ++t) {
    const FreeSuperOp op = sample_free_superop(n, random::derive_seed(rng_seed, static_cast<std::uint64_t>(t)));
    const QChannel image = superop_apply(op, n);
    const double margin_i = c_r_i(image) - base_i;
    rep.worst_c_r_i_margin = t == 0 ? margin_i : std::max(rep.worst_c_r_i_margin, margin_i);
    if (margin_i > opt.c_r_i_tolerance) ++rep.c_r_i_violations;
    if (opt.check_boost) {
      SearchConfig cfg = opt.search;
      // The image has the same input dimension, so the ancilla default agrees.
      const double margin_b = c_r_b_lower(image, cfg).value - base_b;
      rep.worst_c_r_b_margin = t == 0 ? margin_b : std::max(rep.worst_c_r_b_margin, margin_b);
      if (margin_b > opt.c_r_b_tolerance) ++rep.c_r_b_violations;
    }
    ++rep.trials;
  }
  return rep;
}

}  // namespace chanres::monotones

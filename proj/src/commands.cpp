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

#include "chanres/commands.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>

#include "chanres/coherence.hpp"
#include "chanres/error.hpp"
#include "chanres/io.hpp"
#include "chanres/random.hpp"
#include "json.hpp"

namespace chanres::commands {

namespace {

using nlohmann::json;
using monotones::SearchConfig;

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

json matrix_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

json channel_json(const QChannel& n) { return json::parse(io::channel_to_json(n)); }

// Collects check outcomes for one suite. A check passes when
// measured excess <= allowed tolerance.
class Suite {
 public:
  Suite(std::string name, const VerifyOptions& opt) : opt_(opt) { result_.name = std::move(name); }

  double tol(double t) const { return opt_.corrupt_tolerances ? -std::numeric_limits<double>::infinity() : t; }

  void check(double excess, double tolerance, const std::function<json()>& instance) {
    ++result_.checks;
    const double allowed = tol(tolerance);
    const bool ok = std::isfinite(excess) ? excess <= allowed : false;
    if (ok) return;
    ++result_.violations;
    const double over = std::isfinite(excess) && std::isfinite(allowed) ? excess - allowed : 1e300;
    if (result_.violations == 1 || over > result_.worst_excess) {
      result_.worst_excess = over;
      json inst = instance();
      inst["excess"] = std::isfinite(excess) ? json(excess) : json("non-finite");
      inst["tolerance"] = std::isfinite(allowed) ? json(allowed) : json("corrupted by test hook");
      result_.worst_instance = inst.dump();
    }
  }

  void check_true(bool holds, const std::function<json()>& instance) { check(holds ? 0.0 : 1.0, 0.0, instance); }

  SuiteResult take() { return std::move(result_); }

 private:
  const VerifyOptions& opt_;
  SuiteResult result_;
};

std::mt19937_64 suite_rng(const VerifyOptions& opt, std::uint64_t tag) {
  return std::mt19937_64(random::derive_seed(opt.seed, tag));
}

SuiteResult linalg_eig(const VerifyOptions& opt) {
  Suite s("linalg.herm_eig", opt);
  auto rng = suite_rng(opt, 1);
  for (int t = 0; t < opt.trials; ++t) {
    const std::size_t n = 1 + static_cast<std::size_t>(t % 8);
    const ComplexMatrix h = random::random_hermitian(n, rng);
    const EigDecomposition e = herm_eig(h);
    ComplexMatrix rec(n, n);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          rec(i, j) += e.eigenvectors(i, k) * e.eigenvalues[k] * std::conj(e.eigenvectors(j, k));
    const double orth = max_abs_diff(adjoint_mul(e.eigenvectors, e.eigenvectors), ComplexMatrix::identity(n));
    s.check(max_abs_diff(rec, h), 1e-10, [&] { return json{{"matrix", matrix_json(h)}}; });
    s.check(orth, 1e-10, [&] { return json{{"matrix", matrix_json(h)}}; });
  }
  return s.take();
}

SuiteResult linalg_misc(const VerifyOptions& opt) {
  Suite s("linalg.trace_kron", opt);
  auto rng = suite_rng(opt, 2);
  for (int t = 0; t < opt.trials; ++t) {
    const std::vector<std::size_t> dims = {2, 1 + static_cast<std::size_t>(t % 3)};
    const std::size_t n = dims[0] * dims[1];
    const ComplexMatrix m = random::gaussian_matrix(n, n, rng);
    const ComplexMatrix full = partial_trace(m, dims, std::vector<std::size_t>{});
    s.check(std::abs(full(0, 0) - m.trace()), 1e-12, [&] { return json{{"matrix", matrix_json(m)}}; });
    s.check(std::abs(m.trace()) - trace_norm(m), 1e-12, [&] { return json{{"matrix", matrix_json(m)}}; });

    const ComplexMatrix a = random::gaussian_matrix(2, 2, rng);
    const ComplexMatrix b = random::gaussian_matrix(2, 1, rng);
    const ComplexMatrix c = random::gaussian_matrix(1, 3, rng);
    const double scale = std::max(1.0, kron(kron(a, b), c).max_abs());
    s.check(max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))) / scale, 1e-15,
            [&] { return json{{"a", matrix_json(a)}, {"b", matrix_json(b)}, {"c", matrix_json(c)}}; });
  }
  return s.take();
}

SuiteResult channel_roundtrip(const VerifyOptions& opt) {
  Suite s("channel.choi_kraus", opt);
  auto rng = suite_rng(opt, 3);
  for (int t = 0; t < opt.trials; ++t) {
    const std::size_t din = 1 + static_cast<std::size_t>(t % 4);
    const std::size_t dout = 1 + static_cast<std::size_t>((t / 4) % 4);
    const QChannel n = random::random_channel(din, dout, 1 + static_cast<std::size_t>(t % 3), rng);
    const QChannel back = QChannel::from_choi(n.choi(), din, dout);
    const QState rho = random::random_mixed_state(din, rng);
    s.check(max_abs_diff(apply(n, rho).matrix(), apply(back, rho).matrix()), 1e-9,
            [&] { return json{{"channel", channel_json(n)}}; });
    s.check(max_abs_diff(apply(n, rho).matrix(), apply_via_choi(n, rho.matrix())), 1e-9,
            [&] { return json{{"channel", channel_json(n)}}; });

    const QChannel m = random::random_channel(dout, 2, 2, rng);
    for (const QChannel& c : {tensor(n, m), compose(m, n)}) {
      bool valid = true;
      try {
        (void)QChannel::from_choi(c.choi(), c.dim_in(), c.dim_out());
      } catch (const Error&) {
        valid = false;
      }
      s.check_true(valid, [&] { return json{{"channel", channel_json(c)}}; });
    }
  }
  return s.take();
}

SuiteResult channel_superop_closure(const VerifyOptions& opt) {
  Suite s("channel.superop_mio_closure", opt);
  for (int t = 0; t < opt.trials; ++t) {
    const std::size_t d = 2 + static_cast<std::size_t>(t % 2);
    const QChannel n = coherence::sample_free_channel(d, random::derive_seed(opt.seed, 400 + t));
    const FreeSuperOp op = monotones::sample_free_superop(n, random::derive_seed(opt.seed, 500 + t));
    const QChannel image = superop_apply(op, n);
    s.check_true(coherence::is_mio(image, 1e-8), [&] { return json{{"image", channel_json(image)}}; });
  }
  return s.take();
}

SuiteResult coherence_suite(const VerifyOptions& opt) {
  Suite s("coherence.c_r", opt);
  auto rng = suite_rng(opt, 6);
  for (int t = 0; t < opt.trials; ++t) {
    const std::size_t d = 2 + static_cast<std::size_t>(t % 3);
    const QState rho = random::random_mixed_state(d, rng);
    const QState sigma = random::random_mixed_state(2, rng);
    const QState flat = coherence::dephase(rho);
    auto inst = [&] { return json{{"rho", matrix_json(rho.matrix())}}; };
    const double cr = coherence::c_r(rho);
    s.check(-cr, 0.0, inst);
    // Faithfulness both ways on a coherent and an incoherent sample.
    s.check_true((cr <= 1e-9) == coherence::is_incoherent(rho, 1e-9), inst);
    s.check_true((coherence::c_r(flat) <= 1e-9) == coherence::is_incoherent(flat, 1e-9), inst);
    // Monotone under sampled free channels.
    const QChannel phi = coherence::sample_free_channel(d, rng());
    s.check(coherence::c_r(apply(phi, rho)) - cr, 1e-8,
            [&] { return json{{"rho", matrix_json(rho.matrix())}, {"channel", channel_json(phi)}}; });
    // Additive on products.
    s.check(std::abs(coherence::c_r(tensor(rho, sigma)) - cr - coherence::c_r(sigma)), 1e-9, inst);
    // S(rho || Delta(rho)) = C_r(rho).
    s.check(std::abs(coherence::rel_entropy(rho, flat) - cr), 1e-10, inst);
    // Delta is idempotent and free.
    s.check(max_abs_diff(coherence::dephase(flat).matrix(), flat.matrix()), 0.0, inst);
    s.check_true(coherence::is_mio(dephasing_channel(d), 1e-12), inst);
  }
  s.check_true(!coherence::is_mio(constant_channel(QState::maximally_coherent(2), 2), 1e-9),
               [] { return json{{"channel", "constant Psi_2"}}; });
  return s.take();
}

SuiteResult sdp_suite(const VerifyOptions& opt) {
  Suite s("sdp.solver", opt);
  auto rng = suite_rng(opt, 7);
  const int count = std::max(1, opt.trials / 4);
  for (int t = 0; t < count; ++t) {
    // Plant an optimal pair: X* = V V^T (rank 2), Z* on the complement.
    const std::size_t n = 4;
    const std::size_t m = 5;
    std::normal_distribution<double> g(0.0, 1.0);
    RealMatrix q = RealMatrix::identity(n);
    {
      const ComplexMatrix u = random::random_unitary(n, rng);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) q(i, j) = u(i, j).real();
      // Orthonormalize the real part.
      for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t p = 0; p < c; ++p) {
          double dot = 0.0;
          for (std::size_t r = 0; r < n; ++r) dot += q(r, p) * q(r, c);
          for (std::size_t r = 0; r < n; ++r) q(r, c) -= dot * q(r, p);
        }
        double nn = 0.0;
        for (std::size_t r = 0; r < n; ++r) nn += q(r, c) * q(r, c);
        for (std::size_t r = 0; r < n; ++r) q(r, c) /= std::sqrt(nn);
      }
    }
    RealMatrix xs(n, n), zs(n, n);
    for (std::size_t k = 0; k < n; ++k) {
      const double w = 0.5 + std::abs(g(rng));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) (k < 2 ? xs : zs)(i, j) += w * q(i, k) * q(j, k);
    }
    sdp::SdpProblem p;
    p.add_block(n, sdp::BlockKind::kRealSymmetric);
    std::vector<double> y(m);
    RealMatrix cmat = zs;
    for (std::size_t k = 0; k < m; ++k) {
      sdp::LinearFunctional f;
      double rhs = 0.0;
      y[k] = g(rng);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
          const double a = g(rng);
          f.add(0, i, j, a);
          if (i != j) f.add(0, j, i, a);
          rhs += (i == j ? 1.0 : 2.0) * a * xs(i, j);
          cmat(i, j) += y[k] * a;
          if (i != j) cmat(j, i) += y[k] * a;
        }
      p.add_constraint(std::move(f), rhs);
    }
    double planted = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        p.objective.add(0, i, j, cmat(i, j));
        planted += cmat(i, j) * xs(i, j);
      }
    const sdp::SdpSolution a = sdp::solve(p);
    const sdp::SdpSolution b = sdp::solve(p);
    auto inst = [&] { return json{{"planted_value", planted}, {"status", std::string(sdp::to_string(a.status))}}; };
    s.check_true(a.status == sdp::SdpStatus::kOptimal, inst);
    s.check(a.relative_gap, 1e-7, inst);
    s.check(a.primal_residual, 1e-7, inst);
    s.check(-herm_eigvals(a.primal_point[0]).front(), 1e-8, inst);
    s.check(std::abs(a.primal_value - planted), 1e-6, inst);
    s.check_true(a.primal_value == b.primal_value && a.dual_multipliers == b.dual_multipliers, inst);

    const ComplexMatrix h = random::random_hermitian(3, rng);
    s.check_true(sdp::real_to_complex_embedding(sdp::complex_to_real_embedding(h)) == h,
                 [&] { return json{{"matrix", matrix_json(h)}}; });
  }
  return s.take();
}

SuiteResult monotones_exact(const VerifyOptions& opt) {
  Suite s("monotones.c_r_i", opt);
  auto rng = suite_rng(opt, 8);
  for (int t = 0; t < opt.trials; ++t) {
    const QChannel n = random::random_channel(2, 2, 1 + static_cast<std::size_t>(t % 3), rng);
    const QChannel m = random::random_channel(2, 2, 1 + static_cast<std::size_t>((t + 1) % 3), rng);
    auto inst = [&] { return json{{"n", channel_json(n)}, {"m", channel_json(m)}}; };
    // Additivity.
    s.check(std::abs(monotones::c_r_i(tensor(n, m)) - monotones::c_r_i(n) - monotones::c_r_i(m)), 1e-8, inst);
    // MIO characterization on a coherent and a free example.
    s.check_true((monotones::c_r_i(n) <= 1e-9) == coherence::is_mio(n, 1e-8), inst);
    const QChannel free = coherence::sample_free_channel(2, rng());
    s.check_true((monotones::c_r_i(free) <= 1e-9) == coherence::is_mio(free, 1e-8),
                 [&] { return json{{"channel", channel_json(free)}}; });
    // Monotonicity of the exact measure under free super-operations.
    const auto rep = monotones::verify_monotonicity(n, 5, rng(), {.check_boost = false});
    s.check(rep.worst_c_r_i_margin, 1e-8, inst);
  }
  return s.take();
}

SuiteResult monotones_sdp(const VerifyOptions& opt) {
  Suite s("monotones.sdp_chain", opt);
  auto rng = suite_rng(opt, 9);
  const int count = std::max(1, opt.trials / 2);
  std::uniform_real_distribution<double> angle(0.0, std::acos(-1.0) / 4);
  for (int t = 0; t < count; ++t) {
    const QChannel n = random::random_channel(2, 2, 1 + static_cast<std::size_t>(t % 3), rng);
    auto inst = [&] { return json{{"channel", channel_json(n)}}; };
    // Chain C_{r,I} <= C_max.
    s.check(monotones::c_max(n) > -1.0 ? monotones::c_r_i(n) - monotones::c_max(n) : 1.0, 1e-6, inst);
    // Continuity: mix toward another channel and compare.
    const QChannel r = random::random_channel(2, 2, 2, rng);
    const double eps = t % 2 == 0 ? 1e-3 : 1e-2;
    std::vector<ComplexMatrix> ops;
    for (const ComplexMatrix& k : n.kraus()) ops.push_back(k * cplx(std::sqrt(1.0 - eps / 2)));
    for (const ComplexMatrix& k : r.kraus()) ops.push_back(k * cplx(std::sqrt(eps / 2)));
    const QChannel mixed = QChannel::from_kraus(std::move(ops));
    const double dist = monotones::diamond_distance(n, mixed);
    s.check(dist - eps, 1e-7, inst);
    s.check(std::abs(monotones::c_r_i(n) - monotones::c_r_i(mixed)) - monotones::c_r_i_continuity_bound(dist, 2), 1e-6,
            inst);
    // Free channels cost nothing.
    const QChannel free = coherence::sample_free_channel(2, rng());
    s.check(std::abs(monotones::c_max(free)), 1e-6, [&] { return json{{"channel", channel_json(free)}}; });
    // Diamond distance is a metric.
    s.check(monotones::diamond_distance(n, n), 1e-7, inst);
  }
  // Tensor-power subadditivity on one rotation.
  const double theta = angle(rng);
  const QChannel rot = unitary_channel(rotation_unitary(theta));
  s.check(monotones::c_max_tensor(rot, 2) - monotones::c_max(rot), 1e-6, [&] { return json{{"theta", theta}}; });
  return s.take();
}

SuiteResult monotones_boost(const VerifyOptions& opt) {
  Suite s("monotones.c_r_b_lower", opt);
  auto rng = suite_rng(opt, 10);
  const int count = std::max(1, opt.trials / 5);
  SearchConfig cfg;
  cfg.ancilla_dim = 1;
  cfg.restarts = 8;
  cfg.rng_seed = opt.seed;
  for (int t = 0; t < count; ++t) {
    const QChannel n = random::random_channel(2, 2, 1 + static_cast<std::size_t>(t % 2), rng);
    const QChannel m = random::random_channel(2, 2, 1, rng);
    auto inst = [&] { return json{{"n", channel_json(n)}, {"m", channel_json(m)}}; };
    const auto bn = monotones::c_r_b_lower(n, cfg);
    const auto bm = monotones::c_r_b_lower(m, cfg);
    // Feasible-point bound C_{r,g} <= C_{r,b}.
    s.check(monotones::c_r_i(n) - bn.value, 1e-6, inst);
    // Superadditivity with the product witness seeded.
    const std::vector<std::vector<cplx>> seeds = {monotones::product_start(bn, 2, bm, 2)};
    const auto joint = monotones::c_r_b_lower(tensor(n, m), cfg, seeds);
    s.check(bn.value + bm.value - joint.value, 2e-3, inst);
    // Free channels cannot boost.
    const QChannel free = coherence::sample_free_channel(2, rng());
    s.check(monotones::c_r_b_lower(free, cfg).value, 1e-6, [&] { return json{{"channel", channel_json(free)}}; });
    // Monotone under free super-operations (heuristic on both sides).
    monotones::MonotonicityOptions mo;
    mo.search = cfg;
    const auto rep = monotones::verify_monotonicity(n, 2, rng(), mo);
    s.check(rep.worst_c_r_b_margin, 2e-3, inst);
  }
  return s.take();
}

}  // namespace

std::vector<SweepRow> sweep_rotation(double theta_min, double theta_max, int steps, const SearchConfig& cfg) {
  if (steps < 2) throw ValidationError("sweep_rotation: steps must be at least 2");
  if (!std::isfinite(theta_min) || !std::isfinite(theta_max) || !(theta_max > theta_min)) {
    throw ValidationError("sweep_rotation: need finite theta_min < theta_max");
  }
  std::vector<SweepRow> rows;
  for (int k = 0; k < steps; ++k) {
    const double theta = k == steps - 1 ? theta_max : theta_min + (theta_max - theta_min) * k / (steps - 1);
    const QChannel n = unitary_channel(rotation_unitary(theta));
    SweepRow row;
    row.theta = theta;
    row.c_r_i = monotones::c_r_i(n);
    row.c_r_b_lower = monotones::c_r_b_lower(n, cfg).value;
    row.gap = row.c_r_b_lower - row.c_r_i;
    if (!std::isfinite(row.c_r_i) || !std::isfinite(row.c_r_b_lower)) {
      throw NumericalError("sweep_rotation: non-finite value at theta = " + fixed(theta, 8));
    }
    rows.push_back(row);
  }
  return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::string out = "theta,c_r_i,c_r_b_lower,gap\n";
  for (const SweepRow& r : rows) {
    out += fixed(r.theta, 8) + "," + fixed(r.c_r_i, 8) + "," + fixed(r.c_r_b_lower, 8) + "," + fixed(r.gap, 8) + "\n";
  }
  return out;
}

std::vector<SuiteResult> run_verify(const VerifyOptions& opt) {
  if (opt.trials < 1) throw ValidationError("verify: trials must be at least 1");
  std::vector<SuiteResult> out;
  out.push_back(linalg_eig(opt));
  out.push_back(linalg_misc(opt));
  out.push_back(channel_roundtrip(opt));
  out.push_back(channel_superop_closure(opt));
  out.push_back(coherence_suite(opt));
  out.push_back(sdp_suite(opt));
  out.push_back(monotones_exact(opt));
  out.push_back(monotones_sdp(opt));
  out.push_back(monotones_boost(opt));
  return out;
}

std::string verify_diagnostics_json(const std::vector<SuiteResult>& suites) {
  json failed = json::array();
  for (const SuiteResult& s : suites) {
    if (s.violations == 0) continue;
    failed.push_back({{"suite", s.name},
                      {"checks", s.checks},
                      {"violations", s.violations},
                      {"worst_instance", json::parse(s.worst_instance)}});
  }
  return json{{"failed_suites", std::move(failed)}}.dump(2) + "\n";
}

}  // namespace chanres::commands

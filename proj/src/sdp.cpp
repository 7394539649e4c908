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

// Infeasible-start primal-dual path following with the HKM search
// direction and a Mehrotra predictor-corrector step. Every quantity lives
// in real symmetric blocks; the coefficient of a Hermitian-block
// functional is embedded once up front, so iterates stay invariant under
// the embedding's complex structure and map back without loss.

#include "chanres/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <tuple>

#include "chanres/error.hpp"

namespace chanres::sdp {

namespace {

constexpr double kStepFraction = 0.95;
constexpr double kInfeasibleResidual = 1e-6;

struct Triplet {
  std::size_t row;
  std::size_t col;
  double value;
};

// Symmetric coefficient matrix over all blocks; both (r, c) and (c, r)
// are stored for off-diagonal positions.
struct SparseSym {
  std::vector<std::vector<Triplet>> blocks;

  double frobenius_norm() const {
    double s = 0.0;
    for (const auto& b : blocks)
      for (const Triplet& t : b) s += t.value * t.value;
    return std::sqrt(s);
  }
};

using Blocks = std::vector<RealMatrix>;

struct RealProblem {
  std::vector<std::size_t> dims;  // real block sizes
  SparseSym objective;
  std::vector<SparseSym> constraints;
  std::vector<double> rhs;
};

SparseSym embed_functional(const LinearFunctional& f, const std::vector<Block>& blocks) {
  std::vector<std::map<std::pair<std::size_t, std::size_t>, double>> acc(blocks.size());
  auto put = [&](std::size_t b, std::size_t r, std::size_t c, double v) {
    if (v != 0.0) acc[b][{r, c}] += v;
  };
  for (const Entry& e : f.entries) {
    if (e.block >= blocks.size()) throw DimensionError("sdp: functional references block " + std::to_string(e.block));
    const std::size_t n = blocks[e.block].dim;
    if (e.row >= n || e.col >= n) {
      throw DimensionError("sdp: entry (" + std::to_string(e.row) + ", " + std::to_string(e.col) +
                           ") outside block " + std::to_string(e.block) + " of size " + std::to_string(n));
    }
    const double re = e.value.real();
    const double im = e.value.imag();
    const std::size_t r = e.row;
    const std::size_t c = e.col;
    if (blocks[e.block].kind == BlockKind::kRealSymmetric) {
      put(e.block, r, c, re / 2);
      put(e.block, c, r, re / 2);
    } else {
      // Half the embedding of (V + V^dagger) / 2 with V = value |r><c|.
      put(e.block, r, c, re / 4);
      put(e.block, c, r, re / 4);
      put(e.block, r + n, c + n, re / 4);
      put(e.block, c + n, r + n, re / 4);
      put(e.block, r + n, c, im / 4);
      put(e.block, c, r + n, im / 4);
      put(e.block, c + n, r, -im / 4);
      put(e.block, r, c + n, -im / 4);
    }
  }
  SparseSym out;
  out.blocks.resize(blocks.size());
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (const auto& [rc, v] : acc[b])
      if (v != 0.0) out.blocks[b].push_back({rc.first, rc.second, v});
  return out;
}

double inner(const SparseSym& a, const Blocks& x) {
  double s = 0.0;
  for (std::size_t b = 0; b < a.blocks.size(); ++b)
    for (const Triplet& t : a.blocks[b]) s += t.value * x[b](t.row, t.col);
  return s;
}

double inner(const Blocks& a, const Blocks& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += frobenius_inner(a[i], b[i]);
  return s;
}

void add_scaled(Blocks& x, const SparseSym& a, double scale) {
  for (std::size_t b = 0; b < a.blocks.size(); ++b)
    for (const Triplet& t : a.blocks[b]) x[b](t.row, t.col) += scale * t.value;
}

Blocks zeros(const std::vector<std::size_t>& dims) {
  Blocks out;
  for (std::size_t d : dims) out.emplace_back(d, d);
  return out;
}

Blocks scaled_identity(const std::vector<std::size_t>& dims, double s) {
  Blocks out;
  for (std::size_t d : dims) out.push_back(RealMatrix::identity(d) * s);
  return out;
}

double max_abs(const Blocks& x) {
  double m = 0.0;
  for (const RealMatrix& b : x)
    for (double v : b.entries()) m = std::max(m, std::abs(v));
  return m;
}

// Largest alpha with x + alpha * dx still PSD (infinity when unbounded).
double max_step(const Blocks& x, const Blocks& dx) {
  double alpha = std::numeric_limits<double>::infinity();
  for (std::size_t b = 0; b < x.size(); ++b) {
    double lmin;
    if (x[b].rows() == 1) {
      lmin = dx[b](0, 0) / x[b](0, 0);
    } else {
      RealMatrix lower;
      if (!cholesky(x[b], lower)) return 0.0;
      lmin = sym_eigvals(congruence_inverse(lower, dx[b])).front();
    }
    if (lmin < 0.0) alpha = std::min(alpha, -1.0 / lmin);
  }
  return alpha;
}

class InteriorPoint {
 public:
  InteriorPoint(const RealProblem& p, const SolverOptions& opt) : p_(p), opt_(opt), m_(p.constraints.size()) {
    for (std::size_t d : p_.dims) total_dim_ += d;
    touching_.resize(p_.dims.size());
    for (std::size_t k = 0; k < m_; ++k)
      for (std::size_t b = 0; b < p_.dims.size(); ++b)
        if (!p_.constraints[k].blocks[b].empty()) touching_[b].push_back(k);
  }

  struct Result {
    Blocks x;
    std::vector<double> y;
    SdpStatus status;
    int iterations;
  };

  Result run() {
    initialize();
    const double mu0 = mu();
    SdpStatus status = SdpStatus::kMaxIterations;
    int it = 0;
    for (; it < opt_.max_iterations; ++it) {
      residuals();
      const double pobj = inner(p_.objective, x_);
      double dobj = 0.0;
      for (std::size_t k = 0; k < m_; ++k) dobj += p_.rhs[k] * y_[k];
      const double gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj));
      const double pinf = norm_inf(rp_) / (1.0 + b_norm_);
      const double dinf = max_abs(rd_) / (1.0 + c_norm_);
      if (gap < opt_.tolerance && pinf < opt_.tolerance && dinf < opt_.tolerance) {
        status = SdpStatus::kOptimal;
        break;
      }
      if (it >= 30 && mu() < 1e-10 * mu0 && pinf > kInfeasibleResidual) {
        status = SdpStatus::kInfeasible;
        break;
      }
      if (!step()) break;
    }
    return {x_, y_, status, it};
  }

 private:
  static double norm_inf(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  }

  double mu() const { return inner(x_, z_) / static_cast<double>(total_dim_); }

  void initialize() {
    const double sqrt_n = std::sqrt(static_cast<double>(total_dim_));
    double xi = std::max(10.0, sqrt_n);
    double eta = std::max({10.0, sqrt_n, p_.objective.frobenius_norm()});
    b_norm_ = norm_inf(p_.rhs);
    c_norm_ = 0.0;
    for (const auto& b : p_.objective.blocks)
      for (const Triplet& t : b) c_norm_ = std::max(c_norm_, std::abs(t.value));
    for (std::size_t k = 0; k < m_; ++k) {
      const double an = p_.constraints[k].frobenius_norm();
      xi = std::max(xi, sqrt_n * (1.0 + std::abs(p_.rhs[k])) / (1.0 + an));
      eta = std::max(eta, an);
    }
    x_ = scaled_identity(p_.dims, xi);
    z_ = scaled_identity(p_.dims, eta);
    y_.assign(m_, 0.0);
  }

  void residuals() {
    rp_.resize(m_);
    for (std::size_t k = 0; k < m_; ++k) rp_[k] = p_.rhs[k] - inner(p_.constraints[k], x_);
    rd_ = zeros(p_.dims);
    add_scaled(rd_, p_.objective, 1.0);
    for (std::size_t b = 0; b < rd_.size(); ++b) rd_[b] -= z_[b];
    for (std::size_t k = 0; k < m_; ++k) add_scaled(rd_, p_.constraints[k], -y_[k]);
  }

  // Schur complement M_ij = Tr(A_i X A_j Z^{-1}).
  RealMatrix schur() const {
    RealMatrix m(m_, m_);
    for (std::size_t b = 0; b < p_.dims.size(); ++b) {
      const std::size_t n = p_.dims[b];
      const RealMatrix& x = x_[b];
      const RealMatrix& zi = zinv_[b];
      for (std::size_t i : touching_[b]) {
        // G = X A_i Z^{-1} as a sum of rank-one terms.
        RealMatrix g(n, n);
        for (const Triplet& t : p_.constraints[i].blocks[b])
          for (std::size_t r = 0; r < n; ++r) {
            const double xv = t.value * x(r, t.row);
            if (xv == 0.0) continue;
            for (std::size_t c = 0; c < n; ++c) g(r, c) += xv * zi(t.col, c);
          }
        for (std::size_t j : touching_[b]) {
          if (j < i) continue;
          double s = 0.0;
          for (const Triplet& t : p_.constraints[j].blocks[b]) s += t.value * g(t.row, t.col);
          m(i, j) += s;
        }
      }
    }
    for (std::size_t i = 0; i < m_; ++i)
      for (std::size_t j = 0; j < i; ++j) m(i, j) = m(j, i);
    return m;
  }

  bool factor_schur() {
    const RealMatrix m = schur();
    if (m_ == 0) return true;
    double diag_max = 0.0;
    for (std::size_t i = 0; i < m_; ++i) diag_max = std::max(diag_max, m(i, i));
    double reg = 0.0;
    for (int attempt = 0; attempt < 8; ++attempt) {
      RealMatrix shifted = m;
      for (std::size_t i = 0; i < m_; ++i) shifted(i, i) += reg;
      if (cholesky(shifted, schur_factor_)) return true;
      reg = (reg == 0.0 ? 1e-14 : reg * 100.0) * std::max(diag_max, 1.0);
    }
    return false;
  }

  // Solves the Newton system for a given H = (sigma mu I - XZ - corr) Z^{-1}.
  void direction(const Blocks& h, Blocks& dx, std::vector<double>& dy, Blocks& dz) const {
    Blocks x_rd_zinv;
    for (std::size_t b = 0; b < x_.size(); ++b) x_rd_zinv.push_back(x_[b] * rd_[b] * zinv_[b]);
    dy.assign(m_, 0.0);
    for (std::size_t k = 0; k < m_; ++k)
      dy[k] = rp_[k] - inner(p_.constraints[k], h) + inner(p_.constraints[k], x_rd_zinv);
    if (m_ > 0) cholesky_solve(schur_factor_, dy);
    dz = rd_;
    for (std::size_t k = 0; k < m_; ++k) add_scaled(dz, p_.constraints[k], -dy[k]);
    dx.clear();
    for (std::size_t b = 0; b < x_.size(); ++b) {
      RealMatrix d = h[b] - x_[b] * dz[b] * zinv_[b];
      d.symmetrize();
      dx.push_back(std::move(d));
    }
  }

  bool step() {
    zinv_.clear();
    for (const RealMatrix& z : z_) {
      RealMatrix lower;
      if (!cholesky(z, lower)) return false;
      zinv_.push_back(cholesky_inverse(lower));
    }
    if (!factor_schur()) return false;
    const double mu_now = mu();

    // Predictor: affine-scaling direction.
    Blocks h;
    for (const RealMatrix& x : x_) h.push_back(x * -1.0);
    Blocks dx_a, dz_a;
    std::vector<double> dy_a;
    direction(h, dx_a, dy_a, dz_a);
    const double ap = std::min(1.0, max_step(x_, dx_a));
    const double ad = std::min(1.0, max_step(z_, dz_a));
    double mu_aff = 0.0;
    for (std::size_t b = 0; b < x_.size(); ++b)
      mu_aff += frobenius_inner(x_[b] + dx_a[b] * ap, z_[b] + dz_a[b] * ad);
    mu_aff /= static_cast<double>(total_dim_);
    const double ratio = std::max(0.0, mu_aff / mu_now);
    const double sigma = std::min(1.0, ratio * ratio * ratio);

    // Corrector with the second-order term.
    h.clear();
    for (std::size_t b = 0; b < x_.size(); ++b) {
      RealMatrix t = zinv_[b] * (sigma * mu_now) - x_[b] - dx_a[b] * dz_a[b] * zinv_[b];
      h.push_back(std::move(t));
    }
    Blocks dx, dz;
    std::vector<double> dy;
    direction(h, dx, dy, dz);
    const double alpha_p = std::min(1.0, kStepFraction * max_step(x_, dx));
    const double alpha_d = std::min(1.0, kStepFraction * max_step(z_, dz));
    if (!(alpha_p > 0.0) || !(alpha_d > 0.0)) return false;
    for (std::size_t b = 0; b < x_.size(); ++b) {
      x_[b] += dx[b] * alpha_p;
      z_[b] += dz[b] * alpha_d;
      x_[b].symmetrize();
      z_[b].symmetrize();
    }
    for (std::size_t k = 0; k < m_; ++k) y_[k] += alpha_d * dy[k];
    return true;
  }

  const RealProblem& p_;
  SolverOptions opt_;
  std::size_t m_;
  std::size_t total_dim_ = 0;
  std::vector<std::vector<std::size_t>> touching_;
  double b_norm_ = 0.0;
  double c_norm_ = 0.0;
  Blocks x_, z_, zinv_, rd_;
  std::vector<double> y_, rp_;
  RealMatrix schur_factor_;
};

}  // namespace

std::string_view to_string(SdpStatus s) {
  switch (s) {
    case SdpStatus::kOptimal:
      return "optimal";
    case SdpStatus::kMaxIterations:
      return "max_iterations";
    case SdpStatus::kInfeasible:
      return "infeasible";
  }
  return "unknown";
}

RealMatrix complex_to_real_embedding(const ComplexMatrix& h) {
  if (!h.is_hermitian(kHermitianTol)) throw ValidationError("complex_to_real_embedding: input is not Hermitian");
  const std::size_t n = h.rows();
  RealMatrix y(2 * n, 2 * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      const double re = h(r, c).real();
      const double im = h(r, c).imag();
      y(r, c) = re;
      y(r + n, c + n) = re;
      y(r + n, c) = im;
      y(r, c + n) = -im;
    }
  return y;
}

ComplexMatrix real_to_complex_embedding(const RealMatrix& y) {
  if (y.rows() != y.cols() || y.rows() % 2 != 0) throw DimensionError("real_to_complex_embedding: need an even square");
  const std::size_t n = y.rows() / 2;
  ComplexMatrix h(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      const double re = 0.5 * (y(r, c) + y(r + n, c + n));
      const double im = 0.5 * (y(r + n, c) - y(r, c + n));
      h(r, c) = cplx(re, im);
    }
  return h;
}

double evaluate(const LinearFunctional& f, const std::vector<ComplexMatrix>& point) {
  double s = 0.0;
  for (const Entry& e : f.entries) {
    if (e.block >= point.size()) throw DimensionError("evaluate: block index out of range");
    s += (std::conj(e.value) * point[e.block](e.row, e.col)).real();
  }
  return s;
}

SdpSolution solve(const SdpProblem& problem, const SolverOptions& options) {
  RealProblem rp;
  for (const Block& b : problem.blocks) {
    if (b.dim == 0) throw DimensionError("sdp: zero-sized block");
    rp.dims.push_back(b.kind == BlockKind::kHermitian ? 2 * b.dim : b.dim);
  }
  rp.objective = embed_functional(problem.objective, problem.blocks);
  for (const EqualityConstraint& c : problem.constraints) {
    rp.constraints.push_back(embed_functional(c.functional, problem.blocks));
    rp.rhs.push_back(c.rhs);
  }

  InteriorPoint ipm(rp, options);
  InteriorPoint::Result r = ipm.run();

  SdpSolution sol;
  sol.status = r.status;
  sol.iterations = r.iterations;
  sol.dual_multipliers = r.y;
  for (std::size_t b = 0; b < problem.blocks.size(); ++b) {
    if (problem.blocks[b].kind == BlockKind::kHermitian) {
      sol.primal_point.push_back(real_to_complex_embedding(r.x[b]));
    } else {
      const RealMatrix& x = r.x[b];
      ComplexMatrix c(x.rows(), x.cols());
      for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) c(i, j) = x(i, j);
      sol.primal_point.push_back(std::move(c));
    }
  }
  sol.primal_value = evaluate(problem.objective, sol.primal_point);
  sol.dual_value = 0.0;
  for (std::size_t k = 0; k < problem.constraints.size(); ++k) sol.dual_value += problem.constraints[k].rhs * r.y[k];
  for (const EqualityConstraint& c : problem.constraints)
    sol.primal_residual = std::max(sol.primal_residual, std::abs(evaluate(c.functional, sol.primal_point) - c.rhs));
  sol.relative_gap = std::abs(sol.primal_value - sol.dual_value) / (1.0 + std::abs(sol.primal_value));
  return sol;
}

}  // namespace chanres::sdp

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

#include "chanres/chanres.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <memory>
#include <new>
#include <string>
#include <utility>
#include <vector>

#include "chanres/coherence.hpp"
#include "chanres/commands.hpp"
#include "chanres/error.hpp"
#include "chanres/io.hpp"
#include "chanres/monotones.hpp"

struct chanres_channel {
  chanres::QChannel channel;
};

struct chanres_report {
  chanres::monotones::MonotoneReport report;
};

struct chanres_verify_result {
  std::vector<chanres::commands::SuiteResult> suites;
};

namespace {

using namespace chanres;

thread_local std::string g_last_error;

chanres_status fail(chanres_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

// Runs `body`, translating exceptions into status codes.
template <typename F>
chanres_status guarded(F&& body) {
  g_last_error.clear();
  try {
    body();
    return CHANRES_OK;
  } catch (const DimensionError& e) {
    return fail(CHANRES_ERR_DIMENSION, e.what());
  } catch (const ValidationError& e) {
    return fail(CHANRES_ERR_VALIDATION, e.what());
  } catch (const ParseError& e) {
    return fail(CHANRES_ERR_PARSE, e.what());
  } catch (const NumericalError& e) {
    return fail(CHANRES_ERR_NUMERICAL, e.what());
  } catch (const IoError& e) {
    return fail(CHANRES_ERR_IO, e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(CHANRES_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(CHANRES_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(CHANRES_ERR_INTERNAL, e.what());
  }
}

#define CHANRES_REQUIRE(ptr) \
  if ((ptr) == nullptr) return fail(CHANRES_ERR_ARGUMENT, #ptr " must not be NULL")

monotones::SearchConfig to_config(const chanres_search_config* c) {
  monotones::SearchConfig cfg;
  if (c == nullptr) return cfg;
  if (c->restarts < 0 || c->max_ascent_steps < 1 || !(c->step_tolerance > 0.0) || c->threads < 0) {
    throw ValidationError("search config out of range");
  }
  cfg.ancilla_dim = c->ancilla_dim;
  cfg.restarts = c->restarts;
  cfg.max_ascent_steps = c->max_ascent_steps;
  cfg.step_tolerance = c->step_tolerance;
  cfg.rng_seed = c->seed;
  cfg.threads = c->threads;
  return cfg;
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

chanres_channel* wrap(QChannel c) { return new chanres_channel{std::move(c)}; }

}  // namespace

extern "C" {

const char* chanres_version(void) { return "0.1.0"; }

const char* chanres_last_error(void) { return g_last_error.c_str(); }

const char* chanres_status_name(chanres_status status) {
  switch (status) {
    case CHANRES_OK:
      return "ok";
    case CHANRES_ERR_ARGUMENT:
      return "invalid argument";
    case CHANRES_ERR_DIMENSION:
      return "dimension mismatch";
    case CHANRES_ERR_VALIDATION:
      return "validation error";
    case CHANRES_ERR_PARSE:
      return "parse error";
    case CHANRES_ERR_NUMERICAL:
      return "numerical failure";
    case CHANRES_ERR_IO:
      return "i/o error";
    case CHANRES_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

void chanres_string_free(char* s) { std::free(s); }

chanres_status chanres_channel_from_kraus(size_t dim_in, size_t dim_out, size_t count, const double* kraus,
                                          chanres_channel** out) {
  CHANRES_REQUIRE(kraus);
  CHANRES_REQUIRE(out);
  if (dim_in == 0 || dim_out == 0 || count == 0) return fail(CHANRES_ERR_ARGUMENT, "dimensions must be positive");
  return guarded([&] {
    std::vector<ComplexMatrix> ops;
    const double* p = kraus;
    for (size_t k = 0; k < count; ++k) {
      ComplexMatrix m(dim_out, dim_in);
      for (size_t r = 0; r < dim_out; ++r)
        for (size_t c = 0; c < dim_in; ++c, p += 2) m(r, c) = cplx(p[0], p[1]);
      ops.push_back(std::move(m));
    }
    *out = wrap(QChannel::from_kraus(std::move(ops)));
  });
}

chanres_status chanres_channel_parse_json(const char* text, chanres_channel** out) {
  CHANRES_REQUIRE(text);
  CHANRES_REQUIRE(out);
  return guarded([&] { *out = wrap(io::parse_channel_json(text)); });
}

chanres_status chanres_channel_load_json(const char* path, chanres_channel** out) {
  CHANRES_REQUIRE(path);
  CHANRES_REQUIRE(out);
  return guarded([&] { *out = wrap(io::load_channel_json(path)); });
}

chanres_status chanres_channel_to_json(const chanres_channel* ch, char** out) {
  CHANRES_REQUIRE(ch);
  CHANRES_REQUIRE(out);
  return guarded([&] { *out = copy_string(io::channel_to_json(ch->channel)); });
}

chanres_status chanres_channel_rotation(double theta, chanres_channel** out) {
  CHANRES_REQUIRE(out);
  return guarded([&] { *out = wrap(unitary_channel(rotation_unitary(theta))); });
}

chanres_status chanres_channel_tensor(const chanres_channel* a, const chanres_channel* b, chanres_channel** out) {
  CHANRES_REQUIRE(a);
  CHANRES_REQUIRE(b);
  CHANRES_REQUIRE(out);
  return guarded([&] { *out = wrap(tensor(a->channel, b->channel)); });
}

void chanres_channel_free(chanres_channel* ch) { delete ch; }

size_t chanres_channel_dim_in(const chanres_channel* ch) { return ch == nullptr ? 0 : ch->channel.dim_in(); }

size_t chanres_channel_dim_out(const chanres_channel* ch) { return ch == nullptr ? 0 : ch->channel.dim_out(); }

chanres_status chanres_channel_choi(const chanres_channel* ch, double* out, size_t capacity) {
  CHANRES_REQUIRE(ch);
  CHANRES_REQUIRE(out);
  const ComplexMatrix& j = ch->channel.choi();
  if (capacity < 2 * j.rows() * j.cols()) return fail(CHANRES_ERR_ARGUMENT, "output buffer too small");
  for (size_t r = 0; r < j.rows(); ++r)
    for (size_t c = 0; c < j.cols(); ++c) {
      *out++ = j(r, c).real();
      *out++ = j(r, c).imag();
    }
  return CHANRES_OK;
}

void chanres_search_config_default(chanres_search_config* cfg) {
  if (cfg == nullptr) return;
  const monotones::SearchConfig d;
  cfg->ancilla_dim = d.ancilla_dim;
  cfg->restarts = d.restarts;
  cfg->max_ascent_steps = d.max_ascent_steps;
  cfg->step_tolerance = d.step_tolerance;
  cfg->seed = d.rng_seed;
  cfg->threads = d.threads;
}

chanres_status chanres_c_r_i(const chanres_channel* ch, double* out) {
  CHANRES_REQUIRE(ch);
  CHANRES_REQUIRE(out);
  return guarded([&] { *out = monotones::c_r_i(ch->channel); });
}

chanres_status chanres_c_r_b_lower(const chanres_channel* ch, const chanres_search_config* cfg, double* out) {
  CHANRES_REQUIRE(ch);
  CHANRES_REQUIRE(out);
  return guarded([&] { *out = monotones::c_r_b_lower(ch->channel, to_config(cfg)).value; });
}

chanres_status chanres_c_max(const chanres_channel* ch, double* out) {
  CHANRES_REQUIRE(ch);
  CHANRES_REQUIRE(out);
  return guarded([&] { *out = monotones::c_max(ch->channel); });
}

chanres_status chanres_c_max_tensor(const chanres_channel* ch, int copies, double* out) {
  CHANRES_REQUIRE(ch);
  CHANRES_REQUIRE(out);
  if (copies < 1) return fail(CHANRES_ERR_ARGUMENT, "copies must be at least 1");
  return guarded([&] { *out = monotones::c_max_tensor(ch->channel, copies); });
}

chanres_status chanres_diamond_distance(const chanres_channel* a, const chanres_channel* b, double* out) {
  CHANRES_REQUIRE(a);
  CHANRES_REQUIRE(b);
  CHANRES_REQUIRE(out);
  return guarded([&] { *out = monotones::diamond_distance(a->channel, b->channel); });
}

chanres_status chanres_is_mio(const chanres_channel* ch, double tol, int* out) {
  CHANRES_REQUIRE(ch);
  CHANRES_REQUIRE(out);
  return guarded([&] { *out = coherence::is_mio(ch->channel, tol) ? 1 : 0; });
}

chanres_status chanres_verify_monotonicity(const chanres_channel* ch, int trials, uint64_t seed, int check_boost,
                                           const chanres_search_config* cfg, int* c_r_i_violations,
                                           int* c_r_b_violations) {
  CHANRES_REQUIRE(ch);
  CHANRES_REQUIRE(c_r_i_violations);
  CHANRES_REQUIRE(c_r_b_violations);
  if (trials < 1) return fail(CHANRES_ERR_ARGUMENT, "trials must be at least 1");
  return guarded([&] {
    monotones::MonotonicityOptions opt;
    opt.check_boost = check_boost != 0;
    opt.search = to_config(cfg);
    const auto rep = monotones::verify_monotonicity(ch->channel, trials, seed, opt);
    *c_r_i_violations = rep.c_r_i_violations;
    *c_r_b_violations = rep.c_r_b_violations;
  });
}

chanres_status chanres_analyze(const chanres_channel* ch, const chanres_search_config* cfg, chanres_report** out) {
  CHANRES_REQUIRE(ch);
  CHANRES_REQUIRE(out);
  return guarded([&] { *out = new chanres_report{monotones::analyze(ch->channel, to_config(cfg))}; });
}

chanres_status chanres_report_values_get(const chanres_report* r, chanres_report_values* out) {
  CHANRES_REQUIRE(r);
  CHANRES_REQUIRE(out);
  const auto& m = r->report;
  out->c_r_i = m.c_r_i;
  out->c_r_b_lower = m.c_r_b_lower;
  out->c_max = m.c_max;
  out->distill_parallel = m.distill_parallel;
  out->distill_iterative_lower = m.distill_iterative_lower;
  out->dilute_lower = m.dilute_interval.first;
  out->dilute_upper = m.dilute_interval.second;
  out->irreversibility_gap_lower = m.irreversibility_gap_lower;
  out->ancilla_dim = m.config.ancilla_dim;
  return CHANRES_OK;
}

chanres_status chanres_report_text(const chanres_report* r, char** out) {
  CHANRES_REQUIRE(r);
  CHANRES_REQUIRE(out);
  return guarded([&] { *out = copy_string(io::report_to_text(r->report)); });
}

chanres_status chanres_report_json(const chanres_report* r, char** out) {
  CHANRES_REQUIRE(r);
  CHANRES_REQUIRE(out);
  return guarded([&] { *out = copy_string(io::report_to_json(r->report)); });
}

chanres_status chanres_report_save_json(const chanres_report* r, const char* path) {
  CHANRES_REQUIRE(r);
  CHANRES_REQUIRE(path);
  return guarded([&] { io::write_file_atomic(path, io::report_to_json(r->report)); });
}

void chanres_report_free(chanres_report* r) { delete r; }

chanres_status chanres_sweep_rotation(double theta_min, double theta_max, int steps, const chanres_search_config* cfg,
                                      const char* csv_path) {
  CHANRES_REQUIRE(csv_path);
  return guarded([&] {
    const auto rows = commands::sweep_rotation(theta_min, theta_max, steps, to_config(cfg));
    io::write_file_atomic(csv_path, commands::sweep_to_csv(rows));
  });
}

chanres_status chanres_verify_run(uint64_t seed, int trials, int corrupt_tolerances, chanres_verify_result** out) {
  CHANRES_REQUIRE(out);
  if (trials < 1) return fail(CHANRES_ERR_ARGUMENT, "trials must be at least 1");
  return guarded([&] {
    commands::VerifyOptions opt;
    opt.seed = seed;
    opt.trials = trials;
    opt.corrupt_tolerances = corrupt_tolerances != 0;
    *out = new chanres_verify_result{commands::run_verify(opt)};
  });
}

size_t chanres_verify_suite_count(const chanres_verify_result* r) { return r == nullptr ? 0 : r->suites.size(); }

chanres_status chanres_verify_suite(const chanres_verify_result* r, size_t index, const char** name, int* checks,
                                    int* violations) {
  CHANRES_REQUIRE(r);
  if (index >= r->suites.size()) return fail(CHANRES_ERR_ARGUMENT, "suite index out of range");
  const auto& s = r->suites[index];
  if (name != nullptr) *name = s.name.c_str();
  if (checks != nullptr) *checks = s.checks;
  if (violations != nullptr) *violations = s.violations;
  return CHANRES_OK;
}

int chanres_verify_total_violations(const chanres_verify_result* r) {
  if (r == nullptr) return 0;
  int total = 0;
  for (const auto& s : r->suites) total += s.violations;
  return total;
}

chanres_status chanres_verify_write_diagnostics(const chanres_verify_result* r, const char* path) {
  CHANRES_REQUIRE(r);
  CHANRES_REQUIRE(path);
  return guarded([&] { io::write_file_atomic(path, commands::verify_diagnostics_json(r->suites)); });
}

void chanres_verify_result_free(chanres_verify_result* r) { delete r; }

}  // extern "C"

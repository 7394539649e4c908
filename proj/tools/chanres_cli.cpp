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

// chanres command-line front end. Exit codes:
//   0 ok, 1 invariant violation, 2 input error, 3 numerical failure.

#include <cmath>
#include <cstdio>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "chanres/chanres.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

int exit_code_for(chanres_status s) {
  switch (s) {
    case CHANRES_OK:
      return kExitOk;
    case CHANRES_ERR_NUMERICAL:
    case CHANRES_ERR_INTERNAL:
      return kExitNumerical;
    default:
      return kExitInput;
  }
}

int report_failure(chanres_status s, const std::string& context) {
  std::fprintf(stderr, "chanres: %s: %s: %s\n", context.c_str(), chanres_status_name(s), chanres_last_error());
  return exit_code_for(s);
}

struct ChannelDeleter {
  void operator()(chanres_channel* c) const { chanres_channel_free(c); }
};
using ChannelPtr = std::unique_ptr<chanres_channel, ChannelDeleter>;

struct ReportDeleter {
  void operator()(chanres_report* r) const { chanres_report_free(r); }
};

struct VerifyDeleter {
  void operator()(chanres_verify_result* r) const { chanres_verify_result_free(r); }
};

struct StringDeleter {
  void operator()(char* s) const { chanres_string_free(s); }
};

void add_search_flags(CLI::App* cmd, chanres_search_config& cfg) {
  cmd->add_option("--ancilla-dim", cfg.ancilla_dim, "Ancilla dimension for the boosting search (0 = dim_in)")
      ->capture_default_str();
  cmd->add_option("--restarts", cfg.restarts, "Random restarts of the boosting search")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--seed", cfg.seed, "Seed of the boosting search")->capture_default_str();
  cmd->add_option("--tolerance", cfg.step_tolerance, "Stop an ascent once an accepted step gains less than this")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

int cmd_analyze(const std::string& path, const chanres_search_config& cfg, const std::string& out) {
  chanres_channel* raw = nullptr;
  chanres_status s = chanres_channel_load_json(path.c_str(), &raw);
  if (s != CHANRES_OK) return report_failure(s, path);
  ChannelPtr ch(raw);

  chanres_report* rep_raw = nullptr;
  s = chanres_analyze(ch.get(), &cfg, &rep_raw);
  if (s != CHANRES_OK) return report_failure(s, "analyze");
  std::unique_ptr<chanres_report, ReportDeleter> rep(rep_raw);

  char* text_raw = nullptr;
  s = chanres_report_text(rep.get(), &text_raw);
  if (s != CHANRES_OK) return report_failure(s, "analyze");
  std::unique_ptr<char, StringDeleter> text(text_raw);
  std::fputs(text.get(), stdout);

  if (!out.empty()) {
    s = chanres_report_save_json(rep.get(), out.c_str());
    if (s != CHANRES_OK) return report_failure(s, out);
  }
  return kExitOk;
}

int cmd_sweep(double theta_min, double theta_max, int steps, const chanres_search_config& cfg,
              const std::string& out) {
  if (steps < 2) {
    std::fprintf(stderr, "chanres: --steps must be at least 2\n");
    return kExitInput;
  }
  const chanres_status s = chanres_sweep_rotation(theta_min, theta_max, steps, &cfg, out.c_str());
  if (s == CHANRES_OK) return kExitOk;
  const int code = report_failure(s, "sweep-rotation");
  // Anything but a bad argument means the sweep itself failed.
  return s == CHANRES_ERR_ARGUMENT || s == CHANRES_ERR_VALIDATION ? code : kExitNumerical;
}

int cmd_diamond(const std::string& a_path, const std::string& b_path) {
  chanres_channel* raw = nullptr;
  chanres_status s = chanres_channel_load_json(a_path.c_str(), &raw);
  if (s != CHANRES_OK) return report_failure(s, a_path);
  ChannelPtr a(raw);
  s = chanres_channel_load_json(b_path.c_str(), &raw);
  if (s != CHANRES_OK) return report_failure(s, b_path);
  ChannelPtr b(raw);
  if (chanres_channel_dim_in(a.get()) != chanres_channel_dim_in(b.get()) ||
      chanres_channel_dim_out(a.get()) != chanres_channel_dim_out(b.get())) {
    std::fprintf(stderr, "chanres: channel dimensions differ (%zux%zu vs %zux%zu)\n", chanres_channel_dim_out(a.get()),
                 chanres_channel_dim_in(a.get()), chanres_channel_dim_out(b.get()), chanres_channel_dim_in(b.get()));
    return kExitInput;
  }
  double d = 0.0;
  s = chanres_diamond_distance(a.get(), b.get(), &d);
  if (s != CHANRES_OK) return report_failure(s, "diamond");
  std::printf("%.8f\n", d);
  return kExitOk;
}

int cmd_verify(std::uint64_t seed, int trials, const std::string& diagnostics, bool corrupt) {
  chanres_verify_result* raw = nullptr;
  const chanres_status s = chanres_verify_run(seed, trials, corrupt ? 1 : 0, &raw);
  if (s != CHANRES_OK) return report_failure(s, "verify");
  std::unique_ptr<chanres_verify_result, VerifyDeleter> res(raw);

  const std::size_t n = chanres_verify_suite_count(res.get());
  for (std::size_t i = 0; i < n; ++i) {
    const char* name = nullptr;
    int checks = 0;
    int violations = 0;
    chanres_verify_suite(res.get(), i, &name, &checks, &violations);
    std::printf("%-30s checks %5d  violations %d  %s\n", name, checks, violations, violations == 0 ? "PASS" : "FAIL");
  }
  const int total = chanres_verify_total_violations(res.get());
  if (total == 0) {
    std::printf("verify: all suites passed\n");
    return kExitOk;
  }
  const chanres_status ws = chanres_verify_write_diagnostics(res.get(), diagnostics.c_str());
  if (ws != CHANRES_OK) report_failure(ws, diagnostics);
  std::printf("verify: %d violation(s); worst instances written to %s\n", total, diagnostics.c_str());
  return kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coherence resource quantifiers for quantum channels"};
  app.set_version_flag("--version", chanres_version());
  app.require_subcommand(1);

  chanres_search_config cfg;
  chanres_search_config_default(&cfg);

  std::string analyze_path;
  std::string analyze_out;
  auto* analyze = app.add_subcommand("analyze", "Print the monotone report of a channel file");
  analyze->add_option("channel", analyze_path, "Channel JSON file")->required();
  analyze->add_option("--out", analyze_out, "Also write the report as JSON");
  add_search_flags(analyze, cfg);

  double theta_min = 0.0;
  double theta_max = std::acos(-1.0) / 4;
  int steps = 50;
  std::string sweep_out;
  auto* sweep = app.add_subcommand("sweep-rotation", "Tabulate c_r_i and c_r_b_lower for exp(-i theta sigma_y)");
  sweep->add_option("--theta-min", theta_min, "First angle (radians)")->capture_default_str();
  sweep->add_option("--theta-max", theta_max, "Last angle (radians)")->capture_default_str();
  sweep->add_option("--steps", steps, "Grid points (>= 2)")->capture_default_str();
  sweep->add_option("--out", sweep_out, "CSV output file")->required();
  add_search_flags(sweep, cfg);

  std::string diamond_a;
  std::string diamond_b;
  auto* diamond = app.add_subcommand("diamond", "Diamond-norm distance between two channel files");
  diamond->add_option("a", diamond_a, "First channel JSON file")->required();
  diamond->add_option("b", diamond_b, "Second channel JSON file")->required();

  std::uint64_t verify_seed = 1;
  int verify_trials = 20;
  std::string diagnostics = "chanres_verify_diagnostics.json";
  bool corrupt = false;
  auto* verify = app.add_subcommand("verify", "Run the invariant battery of every module");
  verify->add_option("--seed", verify_seed, "Seed of the battery")->capture_default_str();
  verify->add_option("--trials", verify_trials, "Samples per suite")->check(CLI::PositiveNumber)->capture_default_str();
  verify->add_option("--diagnostics", diagnostics, "Where to write the worst violating instances")
      ->capture_default_str();
  // Negative-control hook for tests: every tolerance becomes negative.
  verify->add_flag("--corrupt-tolerance-for-testing", corrupt)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  if (*analyze) return cmd_analyze(analyze_path, cfg, analyze_out);
  if (*sweep) return cmd_sweep(theta_min, theta_max, steps, cfg, sweep_out);
  if (*diamond) return cmd_diamond(diamond_a, diamond_b);
  return cmd_verify(verify_seed, verify_trials, diagnostics, corrupt);
}

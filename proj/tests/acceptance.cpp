// Copyright 2026 The dualstat Authors.
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

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "dualstat/distributions.hpp"
#include "dualstat/identities.hpp"
#include "dualstat/intervals.hpp"
#include "dualstat/reconstruct.hpp"

namespace {

using namespace dualstat;

struct Verdict {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

int failures = 0;

void report(int id, const char* title, double budget_s, const std::function<Verdict()>& body) {
  const auto start = Clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
  if (budget_s > 0.0 && elapsed >= budget_s) {
    v.pass = false;
    v.detail += " [over time budget]";
  }
  if (!v.pass) ++failures;
  char timing[64];
  if (budget_s > 0.0) {
    std::snprintf(timing, sizeof(timing), "%.2f s, budget %.0f s", elapsed, budget_s);
  } else {
    std::snprintf(timing, sizeof(timing), "%.2f s", elapsed);
  }
  std::printf("[%s] %d %s: %s (%s)\n", v.pass ? "PASS" : "FAIL", id, title, v.detail.c_str(),
              timing);
  std::fflush(stdout);
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), pattern, a, b, c);
  return buf;
}

constexpr std::uint64_t kAccepted = 100000;
constexpr std::uint64_t kSeed = 20261016;
constexpr int kWorkers = 4;
const std::int64_t kCounts[] = {0, 1, 5, 20};
constexpr IntervalPolicy kPolicies[] = {IntervalPolicy::kCentral, IntervalPolicy::kShortest,
                                        IntervalPolicy::kUpperLimit, IntervalPolicy::kLowerLimit};

// Reconstructions shared by the MC criteria, keyed by n_hat (-1 for Normal).
std::map<std::int64_t, ReconstructionResult> runs;

Verdict identity_suite() {
  const auto summaries = identity_sweep(10000, kSeed, 1e-10);
  Verdict v;
  std::ostringstream s;
  for (const auto& summary : summaries) {
    if (summary.failures != 0 || summary.count != 10000) v.pass = false;
    s << "; " << identity_tag(summary.id) << " max " << summary.max_abs_residual;
  }
  v.detail = "10^4 tuples per identity" + s.str();
  return v;
}

Verdict duality_equalities() {
  std::size_t points = 0;
  std::size_t mismatches = 0;
  for (std::int64_t n_hat = 0; n_hat < 100; ++n_hat) {
    for (int k = 1; k <= 100; ++k) {
      const double mu = 0.5 * k;
      mismatches += dual_gamma_pdf(mu, n_hat) != poisson_pmf(n_hat, PoissonModel(mu));
      ++points;
    }
  }
  for (int i = 0; i < 100; ++i) {
    for (int j = 0; j < 100; ++j) {
      const double x = -20.0 + 0.4 * i + 0.013;
      const double a = -20.0 + 0.4 * j - 0.007;
      const double sigma = 0.1 + 0.1 * ((i * 7 + j) % 100);
      mismatches += normal_pdf(x, NormalModel(a, sigma)) != normal_pdf(a, NormalModel(x, sigma));
      ++points;
    }
  }
  return {mismatches == 0, fmt("%.0f grid points, %.0f bitwise mismatches",
                               static_cast<double>(points), static_cast<double>(mismatches))};
}

Verdict interval_consistency() {
  const double levels[] = {0.6827, 0.90, 0.95, 0.99};
  double worst = 0.0;
  int nesting = 0;
  int dominance = 0;
  for (std::int64_t n_hat = 0; n_hat <= 60; ++n_hat) {
    for (auto policy : kPolicies) {
      ConfidenceInterval previous{};
      for (std::size_t i = 0; i < std::size(levels); ++i) {
        const auto ci = poisson_interval(n_hat, levels[i], policy);
        worst = std::max(worst, std::fabs(eq13_verify(ci, n_hat)));
        if (i > 0 && (ci.lower > previous.lower || ci.upper < previous.upper)) ++nesting;
        previous = ci;
      }
    }
    const auto c = poisson_interval(n_hat, 0.90, IntervalPolicy::kCentral);
    const auto s = poisson_interval(n_hat, 0.90, IntervalPolicy::kShortest);
    if (s.upper - s.lower > c.upper - c.lower) ++dominance;
  }
  return {worst <= 1e-8 && nesting == 0 && dominance == 0,
          fmt("max |eq13 residual| %.3g, nesting violations %.0f, shortest>central %.0f", worst,
              nesting, dominance)};
}

Verdict golden_values() {
  const auto central = poisson_interval(0, 0.90);
  const double e1 = std::max(std::fabs(central.lower + std::log(0.95)),
                             std::fabs(central.upper + std::log(0.05)));
  // chi^2_{0.90, 6} from a printed table.
  const auto upper = poisson_interval(2, 0.90, IntervalPolicy::kUpperLimit);
  const double e2 = std::fabs(upper.upper - 10.6446 / 2.0);
  double e3 = 0.0;
  for (double sigma : {0.5, 1.0, 2.0, 7.0}) {
    const auto ci = normal_interval(3.0, sigma, 0.90);
    e3 = std::max(e3, std::fabs(0.5 * (ci.upper - ci.lower) - 1.6448536 * sigma));
  }
  return {e1 <= 1e-9 && e2 <= 1e-4 && e3 <= 1e-6,
          fmt("n=0 central err %.2g, n=2 upper-limit err %.2g, normal half-width err %.2g", e1, e2,
              e3)};
}

Verdict mc_reconstruction() {
  Verdict v;
  std::ostringstream s;
  for (std::int64_t n_hat : kCounts) {
    auto config = poisson_config(n_hat, kAccepted, kSeed + static_cast<std::uint64_t>(n_hat));
    config.workers = kWorkers;
    runs[n_hat] = reconstruct(config);
    const auto& r = runs[n_hat];
    if (!r.pass || r.accepted != kAccepted) v.pass = false;
    s << "n=" << n_hat << " D=" << r.ks_statistic << "; ";
  }
  auto normal = normal_config(0.0, 1.0, kAccepted, kSeed);
  normal.workers = kWorkers;
  runs[-1] = reconstruct(normal);
  if (!runs[-1].pass) v.pass = false;
  s << "normal D=" << runs[-1].ks_statistic << "; threshold " << runs[-1].ks_threshold;
  v.detail = s.str();
  return v;
}

Verdict negative_control() {
  auto small = poisson_config(0, 1000, kSeed);
  small.support_bound = 30.0;
  small.reference_shape = 2.0;
  const auto a = reconstruct(small);
  auto large = poisson_config(0, kAccepted, kSeed);
  large.workers = kWorkers;
  large.reference_shape = 2.0;
  const auto b = reconstruct(large);
  return {!a.pass && !b.pass, fmt("vs Gamma shape 2: N=1e3 D=%.4f (thr %.4f), N=1e5 D=%.4f",
                                  a.ks_statistic, a.ks_threshold, b.ks_statistic)};
}

Verdict conditional_coverage() {
  constexpr double kLevel = 0.90;
  Verdict v;
  double worst_z = 0.0;
  for (const auto& [key, result] : runs) {
    const double n = static_cast<double>(result.samples.size());
    const double band = 3.0 * std::sqrt(kLevel * (1.0 - kLevel) / n);
    for (auto policy : kPolicies) {
      const auto ci = key >= 0 ? poisson_interval(key, kLevel, policy)
                               : normal_interval(0.0, 1.0, kLevel, policy);
      const auto lo = std::lower_bound(result.samples.begin(), result.samples.end(), ci.lower);
      const auto hi = std::upper_bound(result.samples.begin(), result.samples.end(), ci.upper);
      const double fraction = static_cast<double>(hi - lo) / n;
      worst_z = std::max(worst_z, std::fabs(fraction - kLevel) / (band / 3.0));
      if (std::fabs(fraction - kLevel) > band) v.pass = false;
    }
  }
  if (runs.size() != 5) v.pass = false;
  v.detail = fmt("%.0f targets x 4 policies, worst deviation %.2f standard errors (gate 3)",
                 static_cast<double>(runs.size()), worst_z);
  return v;
}

Verdict determinism() {
  const std::vector<std::vector<std::string>> commands = {
      {"reconstruct", "poisson", "--n", "3", "--accepted", "20000", "--seed", "42", "--quiet"},
      {"reconstruct", "poisson", "--n", "0", "--accepted", "5000", "--seed", "7", "--workers",
       "1", "--quiet"},
      {"reconstruct", "normal", "--x", "1.5", "--sigma", "2", "--accepted", "5000", "--seed",
       "9", "--quiet"},
  };
  int identical = 0;
  for (const auto& args : commands) {
    std::ostringstream out1, out2, err;
    cli::run(args, out1, err);
    cli::run(args, out2, err);
    identical += !out1.str().empty() && out1.str() == out2.str();
  }
  return {identical == static_cast<int>(commands.size()),
          fmt("%.0f of %.0f replayed commands byte-identical", identical,
              static_cast<double>(commands.size()))};
}

}  // namespace

int main() {
  report(1, "identity suite", 30, identity_suite);
  report(2, "duality equalities", 5, duality_equalities);
  report(3, "interval self-consistency", 10, interval_consistency);
  report(4, "closed-form golden values", 0, golden_values);
  report(5, "MC reconstruction KS gate", 60, mc_reconstruction);
  report(6, "negative control", 0, negative_control);
  report(7, "conditional coverage", 0, conditional_coverage);
  report(8, "determinism", 0, determinism);
  std::printf("%d of 8 criteria passed\n", 8 - failures);
  return failures == 0 ? 0 : 1;
}

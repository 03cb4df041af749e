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

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "dualstat/distributions.hpp"
#include "dualstat/errors.hpp"
#include "dualstat/identities.hpp"
#include "dualstat/intervals.hpp"
#include "dualstat/reconstruct.hpp"
#include "dualstat/serialize.hpp"
#include "json.hpp"

namespace dualstat::cli {

namespace {

using nlohmann::json;

constexpr double kResidualGate = 1e-10;
constexpr const char* kSeedVariable = "DUALSTAT_SEED";

// Raised for usage problems detected after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Envelope {
  std::string command;
  json inputs = json::object();
  json result;
  bool ok = true;
  std::string csv;
  std::string summary;
};

struct Globals {
  std::string format = "json";
  bool quiet = false;
};

void emit(const Envelope& env, const Globals& globals, std::ostream& out, std::ostream& err) {
  if (globals.format == "csv") {
    out << env.csv;
  } else {
    json j{{"command", env.command},
           {"inputs", env.inputs},
           {"result", env.result},
           {"status", env.ok ? "ok" : "fail"}};
    out << j.dump(2) << '\n';
  }
  if (!globals.quiet && !env.summary.empty()) err << env.summary << '\n';
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv(kSeedVariable); env != nullptr && *env != '\0') {
    std::size_t used = 0;
    std::uint64_t value = 0;
    try {
      value = std::stoull(env, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || env[used] != '\0') {
      throw UsageError(std::string(kSeedVariable) + " is not an unsigned integer");
    }
    return value;
  }
  throw UsageError(std::string("--seed is required (or set ") + kSeedVariable + ")");
}

IntervalPolicy parse_policy(const std::string& name) {
  const auto policy = policy_from_name(name);
  if (!policy) throw UsageError("unknown policy '" + name + "'");
  return *policy;
}

std::string describe(const ConfidenceInterval& ci) {
  std::ostringstream s;
  s << policy_name(ci.policy) << " interval [" << format_real(ci.lower) << ", "
    << format_real(ci.upper) << "] at level " << format_real(ci.level) << " (achieved "
    << format_real(ci.achieved) << ")";
  return s.str();
}

Envelope interval_envelope(std::string command, json inputs, const ConfidenceInterval& ci) {
  Envelope env;
  env.command = std::move(command);
  env.inputs = std::move(inputs);
  env.result = to_json(ci);
  env.csv = interval_csv_header() + "\n" + to_csv_line(ci) + "\n";
  env.summary = describe(ci);
  return env;
}

Envelope report_envelope(const IdentityReport& report) {
  Envelope env;
  env.command = "verify " + std::string(identity_tag(report.id));
  std::transform(env.command.begin(), env.command.end(), env.command.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (const auto& in : report.inputs) {
    env.inputs[in.name] =
        in.integral ? json(static_cast<std::int64_t>(in.value)) : real_to_json(in.value);
  }
  env.result = to_json(report);
  env.ok = std::fabs(report.residual) <= kResidualGate;
  env.csv = "identity_id,residual,status\n" + std::string(identity_tag(report.id)) + "," +
            format_real(report.residual) + "," + (env.ok ? "ok" : "fail") + "\n";
  env.summary = std::string(identity_tag(report.id)) + " residual " +
                format_real(report.residual) + (env.ok ? " (ok)" : " (exceeds 1e-10)");
  return env;
}

Envelope sweep_envelope(std::size_t count, std::uint64_t seed) {
  Envelope env;
  env.command = "verify sweep";
  env.inputs = {{"count", count}, {"seed", seed}};
  const auto summaries = identity_sweep(count, seed, kResidualGate);
  json identities = json::array();
  std::ostringstream csv;
  std::ostringstream summary;
  csv << "identity_id,count,failures,max_abs_residual\n";
  for (const auto& s : summaries) {
    identities.push_back({{"identity_id", std::string(identity_tag(s.id))},
                          {"count", s.count},
                          {"failures", s.failures},
                          {"max_abs_residual", real_to_json(s.max_abs_residual)},
                          {"worst", to_json(s.worst)}});
    csv << identity_tag(s.id) << ',' << s.count << ',' << s.failures << ','
        << format_real(s.max_abs_residual) << '\n';
    summary << identity_tag(s.id) << ": max |residual| " << format_real(s.max_abs_residual)
            << ", failures " << s.failures << '/' << s.count << '\n';
    if (s.failures > 0) env.ok = false;
  }
  env.result = {{"threshold", real_to_json(kResidualGate)}, {"identities", identities}};
  env.csv = csv.str();
  env.summary = summary.str();
  if (!env.summary.empty()) env.summary.pop_back();
  return env;
}

Envelope reconstruct_envelope(std::string command, json inputs,
                              const ReconstructionConfig& config,
                              const std::optional<std::string>& hist_out) {
  const ReconstructionResult result = reconstruct(config);
  if (hist_out) {
    std::ofstream file(*hist_out);
    if (!file) throw UsageError("cannot open histogram output '" + *hist_out + "'");
    file << histogram_csv(result);
  }
  Envelope env;
  env.command = std::move(command);
  env.inputs = std::move(inputs);
  env.result = to_json(result);
  env.ok = result.pass;
  std::ostringstream csv;
  csv << "accepted,trials,acceptance_rate,ks_statistic,ks_threshold,pass,chi2,chi2_dof\n"
      << result.accepted << ',' << result.trials << ',' << format_real(result.acceptance_rate)
      << ',' << format_real(result.ks_statistic) << ',' << format_real(result.ks_threshold)
      << ',' << (result.pass ? "true" : "false") << ',' << format_real(result.chi2) << ','
      << result.chi2_dof << '\n';
  env.csv = csv.str();
  env.summary = "accepted " + std::to_string(result.accepted) + " of " +
                std::to_string(result.trials) + " trials; KS D = " +
                format_real(result.ks_statistic) + " vs threshold " +
                format_real(result.ks_threshold) + (result.pass ? " (pass)" : " (fail)");
  return env;
}

Envelope scalar_envelope(std::string command, json inputs, double value) {
  Envelope env;
  env.command = std::move(command);
  env.inputs = std::move(inputs);
  env.result = real_to_json(value);
  env.csv = "value\n" + format_real(value) + "\n";
  env.summary = env.command + " = " + format_real(value);
  return env;
}

json reals(std::initializer_list<std::pair<const char*, double>> values) {
  json j = json::object();
  for (const auto& [name, v] : values) j[name] = real_to_json(v);
  return j;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Statistically dual distributions: densities, identities, intervals and "
               "Monte Carlo reconstruction",
               "dualstat"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals globals;
  app.add_option("--format", globals.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--quiet", globals.quiet, "Suppress the summary on the error stream");

  std::optional<Envelope> envelope;

  // interval ---------------------------------------------------------------
  auto* interval = app.add_subcommand("interval", "Confidence interval for a parameter");
  interval->require_subcommand(1);
  interval->fallthrough();

  std::int64_t ip_n = 0;
  double level = 0.0;
  std::string policy = "central";
  auto* ip = interval->add_subcommand("poisson", "Poisson rate from an observed count");
  ip->fallthrough();
  ip->add_option("--n", ip_n, "Observed count")->required()->check(CLI::NonNegativeNumber);
  ip->add_option("--level", level, "Confidence level in (0, 1)")->required();
  ip->add_option("--policy", policy, "central | shortest | upper_limit | lower_limit");
  ip->callback([&] {
    const auto ci = poisson_interval(ip_n, level, parse_policy(policy));
    envelope = interval_envelope("interval poisson",
                                 {{"n", ip_n}, {"level", real_to_json(level)}, {"policy", policy}},
                                 ci);
  });

  double in_x = 0.0;
  double in_sigma = 1.0;
  auto* in = interval->add_subcommand("normal", "Normal mean from one observation");
  in->fallthrough();
  in->add_option("--x", in_x, "Observed value")->required();
  in->add_option("--sigma", in_sigma, "Known standard deviation")->required();
  in->add_option("--level", level, "Confidence level in (0, 1)")->required();
  in->add_option("--policy", policy, "central | shortest | upper_limit | lower_limit");
  in->callback([&] {
    const auto ci = normal_interval(in_x, in_sigma, level, parse_policy(policy));
    json inputs = reals({{"x", in_x}, {"sigma", in_sigma}, {"level", level}});
    inputs["policy"] = policy;
    envelope = interval_envelope("interval normal", std::move(inputs), ci);
  });

  // verify -----------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "Evaluate an identity residual");
  verify->require_subcommand(1);
  verify->fallthrough();

  double mu1 = 0.0, mu2 = 0.0, b = 0.0, c = 0.0, d = 0.0, sigma = 1.0, p = 0.0, x = 0.0;
  std::int64_t vn = 0, vm = 0;

  auto* v5 = verify->add_subcommand("eq5", "Poisson-Gamma identity with counts n < m");
  v5->add_option("--mu1", mu1)->required();
  v5->add_option("--mu2", mu2)->required();
  v5->add_option("--n", vn)->required();
  v5->add_option("--m", vm)->required();
  v5->callback([&] { envelope = report_envelope(eq5_residual(mu1, mu2, vn, vm)); });

  auto* v12 = verify->add_subcommand("eq12", "Poisson-Gamma identity summing to one");
  v12->add_option("--mu1", mu1)->required();
  v12->add_option("--mu2", mu2)->required();
  v12->add_option("--n", vn)->required();
  v12->callback([&] { envelope = report_envelope(eq12_residual(mu1, mu2, vn)); });

  auto* v8 = verify->add_subcommand("eq8", "Normal self-duality");
  v8->add_option("--b", b)->required();
  v8->add_option("--c", c)->required();
  v8->add_option("--d", d)->required();
  v8->add_option("--sigma", sigma)->required();
  v8->callback([&] { envelope = report_envelope(eq8_residual(b, c, d, sigma)); });

  auto* v11 = verify->add_subcommand("eq11", "Negative binomial - Beta identity");
  v11->add_option("--p", p)->required();
  v11->add_option("--n", vn)->required();
  v11->add_option("--m", vm)->required();
  v11->callback([&] { envelope = report_envelope(eq11_residual(p, vn, vm)); });

  auto* v17 = verify->add_subcommand("eq17", "Normal identity around an observation");
  auto* v18 = verify->add_subcommand("eq18", "Normal identity with shifted tails (c, d >= 0)");
  for (auto* sub : {v17, v18}) {
    sub->add_option("--x", x)->required();
    sub->add_option("--c", c)->required();
    sub->add_option("--d", d)->required();
    sub->add_option("--sigma", sigma)->required();
  }
  v17->callback([&] { envelope = report_envelope(eq17_residual(x, c, d, sigma)); });
  v18->callback([&] { envelope = report_envelope(eq18_residual(x, c, d, sigma)); });

  std::size_t sweep_count = 10000;
  std::optional<std::uint64_t> seed_flag;
  auto* sweep = verify->add_subcommand("sweep", "Randomized sweep over every identity");
  sweep->add_option("--count", sweep_count, "Tuples per identity")->check(CLI::PositiveNumber);
  sweep->add_option("--seed", seed_flag, "Random seed");
  sweep->callback([&] { envelope = sweep_envelope(sweep_count, resolve_seed(seed_flag)); });

  for (auto* sub : {v5, v12, v8, v11, v17, v18, sweep}) sub->fallthrough();

  // reconstruct ------------------------------------------------------------
  auto* rec = app.add_subcommand("reconstruct", "Monte Carlo reconstruction of the parameter law");
  rec->require_subcommand(1);
  rec->fallthrough();

  std::uint64_t accepted = 100000;
  int bins = 100;
  int workers = 4;
  std::optional<std::string> hist_out;

  std::int64_t rp_n = 0;
  std::optional<double> mu_max;
  std::optional<double> test_shape;
  auto* rp = rec->add_subcommand("poisson", "Reconstruct the Poisson rate given a count");
  rp->add_option("--n", rp_n, "Observed count")->required()->check(CLI::NonNegativeNumber);
  rp->add_option("--mu-max", mu_max, "Upper end of the uniform proposal");
  rp->add_option("--test-shape", test_shape, "Test against Gamma(1, shape) instead of n + 1");

  double rn_x = 0.0;
  double rn_sigma = 1.0;
  double half_width = 10.0;
  double window = 0.01;
  auto* rn = rec->add_subcommand("normal", "Reconstruct the Normal mean given an observation");
  rn->add_option("--x", rn_x, "Observed value")->required();
  rn->add_option("--sigma", rn_sigma, "Known standard deviation");
  rn->add_option("--half-width", half_width, "Proposal half-width in sigma units");
  rn->add_option("--window", window, "Acceptance half-window in sigma units");

  for (auto* sub : {rp, rn}) {
    sub->fallthrough();
    sub->add_option("--accepted", accepted, "Accepted samples to collect");
    sub->add_option("--seed", seed_flag, "Random seed (falls back to DUALSTAT_SEED)");
    sub->add_option("--bins", bins, "Histogram bins");
    sub->add_option("--workers", workers, "Parallel workers");
    sub->add_option("--hist-out", hist_out, "Write the histogram CSV here");
  }

  rp->callback([&] {
    ReconstructionConfig config = poisson_config(rp_n, accepted, resolve_seed(seed_flag));
    if (mu_max) config.support_bound = *mu_max;
    config.bins = bins;
    config.workers = workers;
    config.reference_shape = test_shape;
    json inputs{{"n", rp_n},
                {"accepted", accepted},
                {"seed", config.seed},
                {"mu_max", real_to_json(config.support_bound)},
                {"bins", bins},
                {"workers", workers}};
    if (test_shape) inputs["test_shape"] = real_to_json(*test_shape);
    envelope = reconstruct_envelope("reconstruct poisson", std::move(inputs), config, hist_out);
  });
  rn->callback([&] {
    ReconstructionConfig config = normal_config(rn_x, rn_sigma, accepted, resolve_seed(seed_flag));
    config.support_bound = half_width;
    config.accept_window = window;
    config.bins = bins;
    config.workers = workers;
    json inputs = reals({{"x", rn_x}, {"sigma", rn_sigma}, {"half_width", half_width},
                         {"window", window}});
    inputs["accepted"] = accepted;
    inputs["seed"] = config.seed;
    inputs["bins"] = bins;
    inputs["workers"] = workers;
    envelope = reconstruct_envelope("reconstruct normal", std::move(inputs), config, hist_out);
  });

  // eval -------------------------------------------------------------------
  auto* eval = app.add_subcommand("eval", "Evaluate a density, mass or cdf");
  eval->require_subcommand(1);
  eval->fallthrough();

  double ev_x = 0.0, ev_mu = 0.0, ev_mean = 0.0, ev_sigma = 1.0, ev_p = 0.0, ev_scale = 1.0;
  std::int64_t ev_n = 0, ev_m = 0, ev_k = 0;
  std::optional<double> ev_shape;
  std::optional<std::int64_t> ev_count;

  auto* e_ppmf = eval->add_subcommand("poisson-pmf", "mu^n e^-mu / n!");
  auto* e_pcdf = eval->add_subcommand("poisson-cdf", "P(i <= n | mu)");
  for (auto* sub : {e_ppmf, e_pcdf}) {
    sub->add_option("--n", ev_n)->required();
    sub->add_option("--mu", ev_mu)->required();
  }
  e_ppmf->callback([&] {
    envelope = scalar_envelope("eval poisson-pmf", {{"n", ev_n}, {"mu", real_to_json(ev_mu)}},
                               poisson_pmf(ev_n, PoissonModel(ev_mu)));
  });
  e_pcdf->callback([&] {
    envelope = scalar_envelope("eval poisson-cdf", {{"n", ev_n}, {"mu", real_to_json(ev_mu)}},
                               poisson_cdf(ev_n, PoissonModel(ev_mu)));
  });

  auto* e_gpdf = eval->add_subcommand("gamma-pdf", "Gamma density; --n selects shape n + 1");
  auto* e_gcdf = eval->add_subcommand("gamma-cdf", "Gamma cdf; --n selects shape n + 1");
  for (auto* sub : {e_gpdf, e_gcdf}) {
    sub->add_option("--x,--mu", ev_x, "Point of evaluation")->required();
    auto* shape_opt = sub->add_option("--shape", ev_shape, "Shape parameter");
    auto* count_opt = sub->add_option("--n", ev_count, "Observed count (shape n + 1)");
    shape_opt->excludes(count_opt);
    sub->add_option("--scale", ev_scale, "Rate parameter a (default 1)");
  }
  auto gamma_inputs = [&]() {
    if (!ev_shape && !ev_count) throw UsageError("one of --shape or --n is required");
    json inputs = reals({{"x", ev_x}, {"scale", ev_scale}});
    if (ev_count) {
      inputs["n"] = *ev_count;
    } else {
      inputs["shape"] = real_to_json(*ev_shape);
    }
    return inputs;
  };
  auto gamma_model = [&]() {
    if (ev_count && *ev_count < 0) throw DomainError("--n must be non-negative");
    return GammaModel(ev_scale, ev_count ? static_cast<double>(*ev_count) + 1.0 : *ev_shape);
  };
  e_gpdf->callback([&] {
    json inputs = gamma_inputs();
    envelope = scalar_envelope("eval gamma-pdf", std::move(inputs), gamma_pdf(ev_x, gamma_model()));
  });
  e_gcdf->callback([&] {
    json inputs = gamma_inputs();
    envelope = scalar_envelope("eval gamma-cdf", std::move(inputs), gamma_cdf(ev_x, gamma_model()));
  });

  auto* e_npdf = eval->add_subcommand("normal-pdf", "Normal density");
  e_npdf->add_option("--x", ev_x)->required();
  e_npdf->add_option("--mean", ev_mean)->required();
  e_npdf->add_option("--sigma", ev_sigma)->required();
  e_npdf->callback([&] {
    envelope = scalar_envelope("eval normal-pdf",
                               reals({{"x", ev_x}, {"mean", ev_mean}, {"sigma", ev_sigma}}),
                               normal_pdf(ev_x, NormalModel(ev_mean, ev_sigma)));
  });

  auto* e_nb = eval->add_subcommand("negbin-pmf", "(n+k)!/(n!k!) p^(n+1) (1-p)^k");
  e_nb->add_option("--k", ev_k)->required();
  e_nb->add_option("--n", ev_n)->required();
  e_nb->add_option("--p", ev_p)->required();
  e_nb->callback([&] {
    envelope = scalar_envelope("eval negbin-pmf",
                               {{"k", ev_k}, {"n", ev_n}, {"p", real_to_json(ev_p)}},
                               neg_binomial_pmf(ev_k, NegBinomialModel(ev_n, ev_p)));
  });

  auto* e_beta = eval->add_subcommand("beta-pdf", "(n+m+1)!/(n!m!) x^n (1-x)^m");
  e_beta->add_option("--x", ev_x)->required();
  e_beta->add_option("--n", ev_n)->required();
  e_beta->add_option("--m", ev_m)->required();
  e_beta->callback([&] {
    envelope = scalar_envelope("eval beta-pdf",
                               {{"x", real_to_json(ev_x)}, {"n", ev_n}, {"m", ev_m}},
                               beta_pdf(ev_x, BetaModel(ev_n, ev_m)));
  });

  for (auto* sub : {e_ppmf, e_pcdf, e_gpdf, e_gcdf, e_npdf, e_nb, e_beta}) sub->fallthrough();

  // ------------------------------------------------------------------------
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const NumericError& e) {
    err << "error: " << e.what() << '\n';
    return kGateFailed;
  }

  if (!envelope) {
    err << app.help();
    return kUsage;
  }
  emit(*envelope, globals, out, err);
  return envelope->ok ? kOk : kGateFailed;
}

}  // namespace dualstat::cli

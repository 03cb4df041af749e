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

#include "dualstat/identities.hpp"

#include <array>
#include <cmath>
#include <utility>

#include "dualstat/distributions.hpp"
#include "dualstat/errors.hpp"
#include "dualstat/random_stream.hpp"

namespace dualstat {

namespace {

constexpr std::array<std::pair<IdentityId, std::string_view>, 6> kTags = {{
    {IdentityId::kPoissonGamma, "EQ5"},
    {IdentityId::kNormalSelfDual, "EQ8"},
    {IdentityId::kNegBinomialBeta, "EQ11"},
    {IdentityId::kPoissonGammaUnit, "EQ12"},
    {IdentityId::kNormalObserved, "EQ17"},
    {IdentityId::kNormalObservedUnit, "EQ18"},
}};

IdentityReport finish(IdentityId id, std::vector<NamedValue> inputs,
                      std::vector<IdentityTerm> terms, double rhs) {
  IdentityReport report{id, std::move(inputs), std::move(terms), rhs, 0.0};
  report.residual = report.term_sum() - rhs;
  return report;
}

NamedValue real(std::string name, double v) { return {std::move(name), v, false}; }

NamedValue integer(std::string name, std::int64_t v) {
  return {std::move(name), static_cast<double>(v), true};
}

void require_non_negative(double mu, const char* what) {
  if (std::isnan(mu) || mu < 0.0) {
    throw DomainError(std::string(what) + " must be non-negative");
  }
}

void require_sigma(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw DomainError("sigma must be positive and finite");
  }
}

// f(i; mu) for mu >= 0 with the mu = 0 limit.
double poisson_mass(std::int64_t i, double mu) {
  if (mu == 0.0) return i == 0 ? 1.0 : 0.0;
  return poisson_pmf(i, PoissonModel(mu));
}

double poisson_range_sum(std::int64_t first, std::int64_t last, double mu) {
  double sum = 0.0;
  for (std::int64_t i = first; i <= last; ++i) sum += poisson_mass(i, mu);
  return sum;
}

// Signed mass of the parameter a between lo and hi given observation x_hat.
double dual_normal_mass(double lo, double hi, double x_hat, double sigma) {
  return dual_normal_cdf(hi, x_hat, sigma) - dual_normal_cdf(lo, x_hat, sigma);
}

}  // namespace

std::string_view identity_tag(IdentityId id) {
  for (const auto& [key, tag] : kTags) {
    if (key == id) return tag;
  }
  return "?";
}

std::optional<IdentityId> identity_from_tag(std::string_view tag) {
  for (const auto& [key, name] : kTags) {
    if (name == tag) return key;
  }
  return std::nullopt;
}

double IdentityReport::term_sum() const {
  double sum = 0.0;
  for (const auto& term : terms) sum += term.value;
  return sum;
}

IdentityReport eq5_residual(double mu1, double mu2, std::int64_t n, std::int64_t m) {
  require_non_negative(mu1, "mu1");
  require_non_negative(mu2, "mu2");
  if (n < 0) throw DomainError("eq5: n must be non-negative");
  if (m <= n) throw DomainError("eq5: m must exceed n");

  const double gamma_m = dual_gamma_cdf(mu2, m) - dual_gamma_cdf(mu1, m);
  const double sum_mu2 = poisson_range_sum(n + 1, m, mu2);
  const double gamma_n = dual_gamma_cdf(mu1, n) - dual_gamma_cdf(mu2, n);
  const double sum_mu1 = poisson_range_sum(n + 1, m, mu1);
  return finish(IdentityId::kPoissonGamma,
                {real("mu1", mu1), real("mu2", mu2), integer("n", n), integer("m", m)},
                {{"int_mu1^mu2 g_m", gamma_m},
                 {"sum_{n+1}^m f(i;mu2)", sum_mu2},
                 {"int_mu2^mu1 g_n", gamma_n},
                 {"-sum_{n+1}^m f(i;mu1)", -sum_mu1}},
                0.0);
}

IdentityReport eq12_residual(double mu1, double mu2, std::int64_t n_hat) {
  require_non_negative(mu1, "mu1");
  require_non_negative(mu2, "mu2");
  if (n_hat < 0) throw DomainError("eq12: n_hat must be non-negative");

  const double upper_tail = 1.0 - poisson_cdf(n_hat, mu1);
  const double middle = dual_gamma_cdf(mu2, n_hat) - dual_gamma_cdf(mu1, n_hat);
  const double head = poisson_cdf(n_hat, mu2);
  return finish(IdentityId::kPoissonGammaUnit,
                {real("mu1", mu1), real("mu2", mu2), integer("n_hat", n_hat)},
                {{"sum_{n_hat+1}^inf f(i;mu1)", upper_tail},
                 {"int_mu1^mu2 g_n_hat", middle},
                 {"sum_0^n_hat f(i;mu2)", head}},
                1.0);
}

IdentityReport eq8_residual(double b, double c, double d, double sigma) {
  require_sigma(sigma);
  const NormalModel observable(b, sigma);
  const double over_parameter = dual_normal_mass(c, d, b, sigma);
  const double over_variable = normal_cdf(d, observable) - normal_cdf(c, observable);
  return finish(IdentityId::kNormalSelfDual,
                {real("b", b), real("c", c), real("d", d), real("sigma", sigma)},
                {{"int_c^d phi(a;b,sigma) da", over_parameter},
                 {"-int_c^d phi(x;b,sigma) dx", -over_variable}},
                0.0);
}

IdentityReport eq11_residual(double p, std::int64_t n, std::int64_t m) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("eq11: p must lie in [0, 1]");
  if (n < 0 || m < 0) throw DomainError("eq11: n and m must be non-negative");

  const double beta_mass = beta_cdf(p, BetaModel(n, m));
  const NegBinomialModel negbin(n, p);
  double negbin_sum = 0.0;
  for (std::int64_t k = 0; k <= m; ++k) negbin_sum += neg_binomial_pmf(k, negbin);
  return finish(IdentityId::kNegBinomialBeta, {real("p", p), integer("n", n), integer("m", m)},
                {{"int_0^p beta(x;n,m) dx", beta_mass}, {"-sum_0^m P(k;n,p)", -negbin_sum}},
                0.0);
}

IdentityReport eq17_residual(double x_hat, double c, double d, double sigma) {
  require_sigma(sigma);
  const NormalModel observable(x_hat, sigma);
  const double lower = normal_cdf(x_hat - c, observable);
  const double middle = dual_normal_mass(x_hat - c, x_hat + d, x_hat, sigma);
  const double upper = normal_sf(x_hat + d, observable);
  return finish(IdentityId::kNormalObserved,
                {real("x_hat", x_hat), real("c", c), real("d", d), real("sigma", sigma)},
                {{"int_-inf^{x_hat-c} phi(x;x_hat,sigma) dx", lower},
                 {"int_{x_hat-c}^{x_hat+d} phi(a;x_hat,sigma) da", middle},
                 {"int_{x_hat+d}^inf phi(x;x_hat,sigma) dx", upper}},
                1.0);
}

IdentityReport eq18_residual(double x_hat, double c, double d, double sigma) {
  require_sigma(sigma);
  if (std::isnan(c) || std::isnan(d) || c < 0.0 || d < 0.0) {
    throw DomainError("eq18: c and d must be non-negative");
  }
  const double upper = normal_sf(x_hat, NormalModel(x_hat - c, sigma));
  const double middle = dual_normal_mass(x_hat - c, x_hat + d, x_hat, sigma);
  const double lower = normal_cdf(x_hat, NormalModel(x_hat + d, sigma));
  return finish(IdentityId::kNormalObservedUnit,
                {real("x_hat", x_hat), real("c", c), real("d", d), real("sigma", sigma)},
                {{"int_x_hat^inf phi(x;x_hat-c,sigma) dx", upper},
                 {"int_{x_hat-c}^{x_hat+d} phi(a;x_hat,sigma) da", middle},
                 {"int_-inf^x_hat phi(x;x_hat+d,sigma) dx", lower}},
                1.0);
}

std::vector<SweepSummary> identity_sweep(std::size_t count, std::uint64_t seed, double threshold) {
  std::vector<SweepSummary> out;
  std::uint64_t stream_index = 0;
  for (const auto& [id, tag] : kTags) {
    CounterStream rng(seed, stream_index++);
    auto uniform = [&rng](double lo, double hi) { return lo + (hi - lo) * rng.next_uniform(); };
    auto integer_in = [&rng](std::int64_t lo, std::int64_t hi) {
      const auto span = static_cast<std::uint64_t>(hi - lo + 1);
      return lo + static_cast<std::int64_t>(rng.next_u64() % span);
    };

    SweepSummary summary;
    summary.id = id;
    for (std::size_t i = 0; i < count; ++i) {
      IdentityReport report;
      // Draws are sequenced one per statement so the tuple order is fixed.
      switch (id) {
        case IdentityId::kPoissonGamma: {
          const double mu1 = uniform(0, 50);
          const double mu2 = uniform(0, 50);
          const std::int64_t n = integer_in(0, 59);
          const std::int64_t m = integer_in(n + 1, 60);
          report = eq5_residual(mu1, mu2, n, m);
          break;
        }
        case IdentityId::kNegBinomialBeta: {
          const double p = uniform(0, 1);
          const std::int64_t n = integer_in(0, 60);
          const std::int64_t m = integer_in(0, 60);
          report = eq11_residual(p, n, m);
          break;
        }
        case IdentityId::kPoissonGammaUnit: {
          const double mu1 = uniform(0, 50);
          const double mu2 = uniform(0, 50);
          const std::int64_t n_hat = integer_in(0, 60);
          report = eq12_residual(mu1, mu2, n_hat);
          break;
        }
        case IdentityId::kNormalSelfDual:
        case IdentityId::kNormalObserved:
        case IdentityId::kNormalObservedUnit: {
          const bool one_sided = id == IdentityId::kNormalObservedUnit;
          const double x = uniform(-20, 20);
          const double c = one_sided ? uniform(0, 20) : uniform(-20, 20);
          const double d = one_sided ? uniform(0, 20) : uniform(-20, 20);
          const double sigma = uniform(0.1, 10);
          if (id == IdentityId::kNormalSelfDual) {
            report = eq8_residual(x, c, d, sigma);
          } else if (id == IdentityId::kNormalObserved) {
            report = eq17_residual(x, c, d, sigma);
          } else {
            report = eq18_residual(x, c, d, sigma);
          }
          break;
        }
      }
      const double r = std::fabs(report.residual);
      if (!(r <= threshold)) ++summary.failures;
      if (summary.count == 0 || !(r <= summary.max_abs_residual)) {
        summary.max_abs_residual = r;
        summary.worst = std::move(report);
      }
      ++summary.count;
    }
    out.push_back(std::move(summary));
  }
  return out;
}

}  // namespace dualstat

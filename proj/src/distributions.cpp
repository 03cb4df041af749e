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

#include "dualstat/distributions.hpp"

#include <algorithm>
#include <cmath>

#include "dualstat/errors.hpp"
#include "dualstat/special_functions.hpp"

namespace dualstat {

namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143267794;

double log_factorial(std::int64_t n) { return log_gamma(static_cast<double>(n) + 1.0); }

// mu^n e^-mu / n!, shared by the Poisson and dual Gamma readings.
double poisson_weight(std::int64_t n, double mu) {
  const double dn = static_cast<double>(n);
  return std::exp(dn * std::log(mu) - mu - log_factorial(n));
}

bool finite_positive(double v) { return v > 0.0 && std::isfinite(v); }

}  // namespace

PoissonModel::PoissonModel(double mu) : mu_(mu) {
  if (!finite_positive(mu)) throw DomainError("PoissonModel: mu must be positive and finite");
}

GammaModel::GammaModel(double scale_a, double shape) : scale_a_(scale_a), shape_(shape) {
  if (!finite_positive(scale_a) || !finite_positive(shape)) {
    throw DomainError("GammaModel: scale and shape must be positive and finite");
  }
}

double GammaModel::mode() const { return shape_ >= 1.0 ? (shape_ - 1.0) / scale_a_ : 0.0; }

NormalModel::NormalModel(double mean_a, double sigma) : mean_a_(mean_a), sigma_(sigma) {
  if (!std::isfinite(mean_a)) throw DomainError("NormalModel: mean must be finite");
  if (!finite_positive(sigma)) throw DomainError("NormalModel: sigma must be positive and finite");
}

NegBinomialModel::NegBinomialModel(std::int64_t n, double p) : n_(n), p_(p) {
  if (n < 0) throw DomainError("NegBinomialModel: n must be non-negative");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("NegBinomialModel: p must lie in [0, 1]");
}

BetaModel::BetaModel(std::int64_t n, std::int64_t m) : n_(n), m_(m) {
  if (n < 0 || m < 0) throw DomainError("BetaModel: n and m must be non-negative");
}

double poisson_pmf(std::int64_t n, const PoissonModel& model) {
  if (n < 0) throw DomainError("poisson_pmf: n must be non-negative");
  return poisson_weight(n, model.mu());
}

double poisson_cdf(std::int64_t n_hat, const PoissonModel& model) {
  if (n_hat < 0) throw DomainError("poisson_cdf: n_hat must be non-negative");
  return reg_upper_inc_gamma(static_cast<double>(n_hat) + 1.0, model.mu());
}

double poisson_cdf(std::int64_t n_hat, double mu) {
  if (n_hat < 0) throw DomainError("poisson_cdf: n_hat must be non-negative");
  if (std::isnan(mu) || mu < 0.0) throw DomainError("poisson_cdf: mu must be non-negative");
  return reg_upper_inc_gamma(static_cast<double>(n_hat) + 1.0, mu);
}

double gamma_pdf(double x, const GammaModel& model) {
  if (!(x > 0.0)) throw DomainError("gamma_pdf: x must be positive");
  if (std::isinf(x)) return 0.0;
  const double a = model.scale_a();
  const double s = model.shape();
  return std::exp(s * std::log(a) + (s - 1.0) * std::log(x) - a * x - log_gamma(s));
}

double gamma_cdf(double x, const GammaModel& model) {
  if (std::isnan(x) || x < 0.0) throw DomainError("gamma_cdf: x must be non-negative");
  return reg_lower_inc_gamma(model.shape(), model.scale_a() * x);
}

double dual_gamma_pdf(double mu, std::int64_t n_hat) {
  if (!(mu > 0.0)) throw DomainError("dual_gamma_pdf: mu must be positive");
  if (n_hat < 0) throw DomainError("dual_gamma_pdf: n_hat must be non-negative");
  if (std::isinf(mu)) return 0.0;
  return poisson_weight(n_hat, mu);
}

double dual_gamma_cdf(double mu, std::int64_t n_hat) {
  if (std::isnan(mu) || mu < 0.0) throw DomainError("dual_gamma_cdf: mu must be non-negative");
  if (n_hat < 0) throw DomainError("dual_gamma_cdf: n_hat must be non-negative");
  return reg_lower_inc_gamma(static_cast<double>(n_hat) + 1.0, mu);
}

double normal_pdf(double x, const NormalModel& model) {
  const double z = (x - model.mean_a()) / model.sigma();
  return kInvSqrt2Pi / model.sigma() * std::exp(-0.5 * z * z);
}

double normal_cdf(double x, const NormalModel& model) {
  return std_normal_cdf((x - model.mean_a()) / model.sigma());
}

double normal_sf(double x, const NormalModel& model) {
  return std_normal_sf((x - model.mean_a()) / model.sigma());
}

double dual_normal_cdf(double a, double x_hat, double sigma) {
  if (std::isinf(a)) return a > 0.0 ? 1.0 : 0.0;
  return normal_sf(x_hat, NormalModel(a, sigma));
}

double neg_binomial_pmf(std::int64_t k, const NegBinomialModel& model) {
  if (k < 0) throw DomainError("neg_binomial_pmf: k must be non-negative");
  const double p = model.p();
  if (p == 0.0) return 0.0;
  if (p == 1.0) return k == 0 ? 1.0 : 0.0;
  const std::int64_t n = model.n();
  const double log_binom = log_factorial(n + k) - log_factorial(n) - log_factorial(k);
  return std::exp(log_binom + static_cast<double>(n + 1) * std::log(p) +
                  static_cast<double>(k) * std::log1p(-p));
}

double beta_pdf(double x, const BetaModel& model) {
  if (!(x > 0.0 && x < 1.0)) throw DomainError("beta_pdf: x must lie in (0, 1)");
  const std::int64_t n = model.n();
  const std::int64_t m = model.m();
  const double log_norm = log_factorial(n + m + 1) - log_factorial(n) - log_factorial(m);
  return std::exp(log_norm + static_cast<double>(n) * std::log(x) +
                  static_cast<double>(m) * std::log1p(-x));
}

double beta_cdf(double x, const BetaModel& model) {
  if (std::isnan(x)) throw DomainError("beta_cdf: x is NaN");
  return reg_inc_beta(static_cast<double>(model.n()) + 1.0, static_cast<double>(model.m()) + 1.0,
                      std::clamp(x, 0.0, 1.0));
}

}  // namespace dualstat

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

///
/// \file distributions.hpp
///
/// Density, mass and cdf evaluators for the Poisson, Gamma, Normal,
/// negative binomial and Beta laws, in both their "variable" reading and
/// their dual "parameter" reading.
///
/// The Poisson pmf f(n; mu) = mu^n e^-mu / n! is the same function as the
/// Gamma(scale 1, shape n + 1) density g_n(mu) with the roles of n and mu
/// exchanged; poisson_pmf and dual_gamma_pdf share one code path so the two
/// readings agree bit for bit. Likewise the fixed-sigma Normal density is
/// symmetric under exchange of x and its mean.
///
#ifndef DUALSTAT_DISTRIBUTIONS_HPP_
#define DUALSTAT_DISTRIBUTIONS_HPP_

#include <cstdint>

namespace dualstat {

/// Poisson law with rate mu > 0.
class PoissonModel {
 public:
  explicit PoissonModel(double mu);
  double mu() const { return mu_; }

 private:
  double mu_;
};

/// Gamma law with rate `scale_a` (density a^s x^{s-1} e^{-a x} / Gamma(s))
/// and shape s. Equivalent to the (alpha, beta) form with alpha = shape and
/// beta = 1 / scale_a.
class GammaModel {
 public:
  GammaModel(double scale_a, double shape);
  double scale_a() const { return scale_a_; }
  double shape() const { return shape_; }

  double mean() const { return shape_ / scale_a_; }
  double variance() const { return shape_ / (scale_a_ * scale_a_); }
  /// Zero when shape < 1 (density unbounded or maximal at the origin).
  double mode() const;

 private:
  double scale_a_;
  double shape_;
};

/// Normal law with mean `mean_a` and standard deviation sigma > 0.
class NormalModel {
 public:
  NormalModel(double mean_a, double sigma);
  double mean_a() const { return mean_a_; }
  double sigma() const { return sigma_; }

 private:
  double mean_a_;
  double sigma_;
};

/// Negative binomial in the parameterization
/// P(k; n, p) = (n+k)! / (n! k!) p^{n+1} (1-p)^k.
///
/// p = 0 is admitted but degenerate: every mass is zero.
class NegBinomialModel {
 public:
  NegBinomialModel(std::int64_t n, double p);
  std::int64_t n() const { return n_; }
  double p() const { return p_; }

 private:
  std::int64_t n_;
  double p_;
};

/// Beta law with integer exponents: (n+m+1)! / (n! m!) x^n (1-x)^m.
class BetaModel {
 public:
  BetaModel(std::int64_t n, std::int64_t m);
  std::int64_t n() const { return n_; }
  std::int64_t m() const { return m_; }

 private:
  std::int64_t n_;
  std::int64_t m_;
};

double poisson_pmf(std::int64_t n, const PoissonModel& model);

/// P(i <= n_hat | mu), computed as Q(n_hat + 1, mu).
double poisson_cdf(std::int64_t n_hat, const PoissonModel& model);

/// Same sum for any mu >= 0, including the limits mu = 0 (value 1) and
/// mu = +inf (value 0) that PoissonModel excludes.
double poisson_cdf(std::int64_t n_hat, double mu);

double gamma_pdf(double x, const GammaModel& model);
double gamma_cdf(double x, const GammaModel& model);

/// g_{n_hat}(mu) = mu^n_hat e^-mu / n_hat!, the density of the Poisson
/// parameter given an observed count n_hat.
double dual_gamma_pdf(double mu, std::int64_t n_hat);

/// Integral of g_{n_hat} over [0, mu]; mu = +inf gives 1.
double dual_gamma_cdf(double mu, std::int64_t n_hat);

double normal_pdf(double x, const NormalModel& model);
double normal_cdf(double x, const NormalModel& model);

/// P(X > x | model), evaluated without cancellation.
double normal_sf(double x, const NormalModel& model);

/// Cdf of the mean parameter a given an observation x_hat with known sigma:
/// P(a' <= a | x_hat) = P(X >= x_hat | mean a).
double dual_normal_cdf(double a, double x_hat, double sigma);

double neg_binomial_pmf(std::int64_t k, const NegBinomialModel& model);

double beta_pdf(double x, const BetaModel& model);
/// I_x(n + 1, m + 1); x outside [0, 1] is clamped to the support.
double beta_cdf(double x, const BetaModel& model);

}  // namespace dualstat

#endif  // DUALSTAT_DISTRIBUTIONS_HPP_

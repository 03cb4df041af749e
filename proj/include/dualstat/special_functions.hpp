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
/// \file special_functions.hpp
///
/// Scalar special functions: log-gamma, regularized incomplete gamma and
/// beta functions, the standard normal cdf, and quantiles of the Gamma and
/// standard normal laws.
///
/// Every function is a pure function of its arguments.
///
#ifndef DUALSTAT_SPECIAL_FUNCTIONS_HPP_
#define DUALSTAT_SPECIAL_FUNCTIONS_HPP_

namespace dualstat {

/// Convergence controls shared by the iterative evaluators.
struct ToleranceConfig {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  int max_iter = 200;

  /// Throws DomainError unless abs_tol > 0, rel_tol > 0 and max_iter >= 1.
  void validate() const;
};

/// ln Gamma(z) for z > 0.
double log_gamma(double z);

/// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a).
///
/// Series expansion for x < a + 1, Lentz continued fraction for the
/// complement otherwise. x = +inf returns 1.
double reg_lower_inc_gamma(double a, double x, const ToleranceConfig& tol = {});

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x), evaluated
/// directly so the tail keeps full relative precision.
double reg_upper_inc_gamma(double a, double x, const ToleranceConfig& tol = {});

/// Regularized incomplete beta I_x(a, b) for a, b > 0 and 0 <= x <= 1.
double reg_inc_beta(double a, double b, double x, const ToleranceConfig& tol = {});

/// Standard normal cdf Phi(z).
double std_normal_cdf(double z);

/// Standard normal survival function 1 - Phi(z), without cancellation.
double std_normal_sf(double z);

/// x such that P(a, x) = q. Bisection on [0, a + 10 sqrt(a) + 30] with
/// Newton steps kept inside the bracket.
double gamma_quantile(double a, double q, const ToleranceConfig& tol = {});

/// z such that Phi(z) = q; antisymmetric about q = 1/2.
double std_normal_quantile(double q, const ToleranceConfig& tol = {});

}  // namespace dualstat

#endif  // DUALSTAT_SPECIAL_FUNCTIONS_HPP_

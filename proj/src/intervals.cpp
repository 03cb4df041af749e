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

#include "dualstat/intervals.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <utility>

#include "dualstat/errors.hpp"

namespace dualstat {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kAchievedTolerance = 1e-8;

constexpr std::array<std::pair<IntervalPolicy, std::string_view>, 4> kPolicyNames = {{
    {IntervalPolicy::kCentral, "central"},
    {IntervalPolicy::kShortest, "shortest"},
    {IntervalPolicy::kUpperLimit, "upper_limit"},
    {IntervalPolicy::kLowerLimit, "lower_limit"},
}};

void require_level(double level) {
  if (!(level > 0.0 && level < 1.0)) {
    throw DomainError("confidence level must lie in (0, 1)");
  }
}

ConfidenceInterval checked(ConfidenceInterval ci) {
  if (!(ci.lower <= ci.upper) || !(std::fabs(ci.achieved - ci.level) <= kAchievedTolerance)) {
    throw NumericError("interval construction missed the requested level");
  }
  return ci;
}

// Shortest interval for n_hat >= 1: the width mu2(mu1) - mu1 is minimal where
// the density takes equal values at both ends. The density difference
// g(mu1) - g(mu2(mu1)) is negative at mu1 = 0 and positive at the mode (or
// where mu2 escapes to infinity), so bisection on mu1 converges.
std::pair<double, double> shortest_poisson(std::int64_t n_hat, double level,
                                           const ToleranceConfig& tol) {
  const double shape = static_cast<double>(n_hat) + 1.0;
  const double alpha = 1.0 - level;
  double lo = 0.0;
  double hi = std::min(static_cast<double>(n_hat), gamma_quantile(shape, alpha, tol));

  auto upper_for = [&](double mu1) -> double {
    const double target = reg_lower_inc_gamma(shape, mu1, tol) + level;
    if (target >= 1.0) return kInf;
    return gamma_quantile(shape, target, tol);
  };
  auto density = [&](double mu) { return std::isinf(mu) ? 0.0 : dual_gamma_pdf(mu, n_hat); };

  for (int i = 0; i < tol.max_iter && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi;
       ++i) {
    const double mid = 0.5 * (lo + hi);
    const double diff = density(mid) - density(upper_for(mid));
    if (diff < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double mu1 = 0.5 * (lo + hi);
  return {mu1, upper_for(mu1)};
}

}  // namespace

std::string_view policy_name(IntervalPolicy policy) {
  for (const auto& [key, name] : kPolicyNames) {
    if (key == policy) return name;
  }
  return "?";
}

std::optional<IntervalPolicy> policy_from_name(std::string_view name) {
  for (const auto& [key, label] : kPolicyNames) {
    if (label == name) return key;
  }
  return std::nullopt;
}

double dual_gamma_mass(double lo, double hi, std::int64_t n_hat) {
  if (hi < lo) return -dual_gamma_mass(hi, lo, n_hat);
  const double shape = static_cast<double>(n_hat) + 1.0;
  // Work in whichever tail keeps the difference away from cancellation.
  if (lo >= shape) {
    return reg_upper_inc_gamma(shape, lo) - reg_upper_inc_gamma(shape, hi);
  }
  return reg_lower_inc_gamma(shape, hi) - reg_lower_inc_gamma(shape, lo);
}

ConfidenceInterval poisson_interval(std::int64_t n_hat, double level, IntervalPolicy policy,
                                    const ToleranceConfig& tol) {
  require_level(level);
  tol.validate();
  if (n_hat < 0) throw DomainError("poisson_interval: n_hat must be non-negative");

  const double shape = static_cast<double>(n_hat) + 1.0;
  const double alpha = 1.0 - level;
  ConfidenceInterval ci;
  ci.level = level;
  ci.policy = policy;
  switch (policy) {
    case IntervalPolicy::kCentral:
      ci.lower = gamma_quantile(shape, 0.5 * alpha, tol);
      ci.upper = gamma_quantile(shape, 1.0 - 0.5 * alpha, tol);
      break;
    case IntervalPolicy::kUpperLimit:
      ci.lower = 0.0;
      ci.upper = gamma_quantile(shape, level, tol);
      break;
    case IntervalPolicy::kLowerLimit:
      ci.lower = gamma_quantile(shape, alpha, tol);
      ci.upper = kInf;
      break;
    case IntervalPolicy::kShortest:
      if (n_hat == 0) {
        // Density decreasing from its mode at zero.
        ci.lower = 0.0;
        ci.upper = gamma_quantile(shape, level, tol);
      } else {
        std::tie(ci.lower, ci.upper) = shortest_poisson(n_hat, level, tol);
      }
      break;
  }
  ci.achieved = dual_gamma_mass(ci.lower, ci.upper, n_hat);
  return checked(ci);
}

double eq13_verify(const ConfidenceInterval& interval, std::int64_t n_hat) {
  if (std::isnan(interval.lower) || std::isnan(interval.upper) || interval.lower < 0.0 ||
      interval.upper < 0.0) {
    throw DomainError("eq13_verify: bounds must be non-negative");
  }
  return (poisson_cdf(n_hat, interval.lower) - poisson_cdf(n_hat, interval.upper)) -
         interval.level;
}

GammaModel parameter_error_distribution(std::int64_t n_hat) {
  if (n_hat < 0) throw DomainError("parameter_error_distribution: n_hat must be non-negative");
  return GammaModel(1.0, static_cast<double>(n_hat) + 1.0);
}

ConfidenceInterval normal_interval(double x_hat, double sigma, double level,
                                   IntervalPolicy policy, const ToleranceConfig& tol) {
  require_level(level);
  tol.validate();
  if (!std::isfinite(x_hat)) throw DomainError("normal_interval: x_hat must be finite");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw DomainError("normal_interval: sigma must be positive and finite");
  }

  ConfidenceInterval ci;
  ci.level = level;
  ci.policy = policy;
  switch (policy) {
    case IntervalPolicy::kCentral:
    case IntervalPolicy::kShortest: {
      const double half = std_normal_quantile(0.5 * (1.0 + level), tol) * sigma;
      ci.lower = x_hat - half;
      ci.upper = x_hat + half;
      break;
    }
    case IntervalPolicy::kUpperLimit:
      ci.lower = -kInf;
      ci.upper = x_hat + std_normal_quantile(level, tol) * sigma;
      break;
    case IntervalPolicy::kLowerLimit:
      ci.lower = x_hat - std_normal_quantile(level, tol) * sigma;
      ci.upper = kInf;
      break;
  }
  ci.achieved =
      dual_normal_cdf(ci.upper, x_hat, sigma) - dual_normal_cdf(ci.lower, x_hat, sigma);
  return checked(ci);
}

}  // namespace dualstat

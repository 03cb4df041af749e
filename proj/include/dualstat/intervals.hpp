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
/// \file intervals.hpp
///
/// Confidence intervals for the Poisson rate and the Normal mean, built from
/// the distribution of the parameter given one observation.
///
/// For a Poisson count n_hat, (mu1, mu2) has confidence level CL when
///
///   P(i <= n_hat | mu1) - P(i <= n_hat | mu2) = CL,
///
/// which is the same as the Gamma(1, n_hat + 1) mass between mu1 and mu2.
/// That condition fixes the mass but not the endpoints; the policy picks
/// them.
///
#ifndef DUALSTAT_INTERVALS_HPP_
#define DUALSTAT_INTERVALS_HPP_

#include <cstdint>
#include <optional>
#include <string_view>

#include "dualstat/distributions.hpp"
#include "dualstat/special_functions.hpp"

namespace dualstat {

enum class IntervalPolicy {
  kCentral,     // equal tails of (1 - CL) / 2
  kShortest,    // minimal width for the given mass
  kUpperLimit,  // (lowest support point, q_CL)
  kLowerLimit,  // (q_{1-CL}, +inf)
};

std::string_view policy_name(IntervalPolicy policy);
std::optional<IntervalPolicy> policy_from_name(std::string_view name);

struct ConfidenceInterval {
  double lower = 0.0;
  double upper = 0.0;
  double level = 0.0;
  IntervalPolicy policy = IntervalPolicy::kCentral;
  /// Parameter mass actually enclosed, recomputed from the cdfs.
  double achieved = 0.0;
};

/// Gamma(1, n_hat + 1) mass on [lo, hi]; signed when hi < lo. hi may be +inf.
double dual_gamma_mass(double lo, double hi, std::int64_t n_hat);

/// Interval for the Poisson rate after observing n_hat events.
///
/// Throws DomainError for level outside (0, 1) or negative n_hat and
/// NumericError if a root search fails.
ConfidenceInterval poisson_interval(std::int64_t n_hat, double level,
                                    IntervalPolicy policy = IntervalPolicy::kCentral,
                                    const ToleranceConfig& tol = {});

/// [P(i <= n_hat | lower) - P(i <= n_hat | upper)] - level. Bounds may be 0
/// or +inf; negative or NaN bounds throw DomainError.
double eq13_verify(const ConfidenceInterval& interval, std::int64_t n_hat);

/// Gamma(scale 1, shape n_hat + 1): mean and variance n_hat + 1, mode n_hat.
GammaModel parameter_error_distribution(std::int64_t n_hat);

/// Interval for the Normal mean after observing x_hat with known sigma.
/// Central and shortest coincide; one-sided limits carry an infinite side.
ConfidenceInterval normal_interval(double x_hat, double sigma, double level,
                                   IntervalPolicy policy = IntervalPolicy::kCentral,
                                   const ToleranceConfig& tol = {});

}  // namespace dualstat

#endif  // DUALSTAT_INTERVALS_HPP_

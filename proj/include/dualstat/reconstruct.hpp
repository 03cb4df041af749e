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
/// \file reconstruct.hpp
///
/// Monte Carlo reconstruction of the conditional distribution of a
/// parameter given one observed value, and a Kolmogorov-Smirnov test of the
/// reconstructed sample against the predicted dual law.
///
/// Poisson: draw mu ~ U[0, mu_max], draw n ~ Poisson(mu), keep mu when
/// n == n_hat. The kept values follow Gamma(1, n_hat + 1) truncated to
/// [0, mu_max].
///
/// Normal: draw a ~ U[x_hat - L sigma, x_hat + L sigma], draw
/// x ~ Normal(a, sigma), keep a when |x - x_hat| <= w sigma. The kept values
/// follow Normal(x_hat, sigma) up to a smearing of order (w sigma)^2.
///
/// Trials are split over `workers` independent counter-based streams keyed
/// by (seed, worker index). Worker w owns a fixed share of the accepted
/// quota, so the result depends only on (config, seed, workers).
///
#ifndef DUALSTAT_RECONSTRUCT_HPP_
#define DUALSTAT_RECONSTRUCT_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "dualstat/random_stream.hpp"

namespace dualstat {

struct PoissonTarget {
  std::int64_t n_hat = 0;
};

struct NormalTarget {
  double x_hat = 0.0;
  double sigma = 1.0;
};

/// Largest Poisson support bound accepted; the sequential-search sampler
/// starts from e^-mu, which underflows beyond this.
inline constexpr double kMaxPoissonSupport = 700.0;

/// Largest dual-Gamma mass allowed beyond mu_max.
inline constexpr double kMaxTruncatedMass = 1e-9;

/// Asymptotic Kolmogorov critical value c(alpha) at alpha = 0.01.
inline constexpr double kKsCritical001 = 1.6276;

struct ReconstructionConfig {
  std::variant<PoissonTarget, NormalTarget> target;
  /// mu_max for Poisson; half-width L in sigma units for Normal.
  double support_bound = 0.0;
  /// Normal only: acceptance half-window in sigma units.
  double accept_window = 0.01;
  std::uint64_t target_accepted = 100000;
  std::uint64_t seed = 0;
  int bins = 100;
  int workers = 1;
  /// Poisson only: test against Gamma(1, reference_shape) instead of the
  /// predicted Gamma(1, n_hat + 1). Used for power checks.
  std::optional<double> reference_shape;

  /// Throws ConfigError when an invariant is violated.
  void validate() const;
};

/// n_hat + 10 sqrt(n_hat + 1) + 25.
double default_poisson_support(std::int64_t n_hat);

ReconstructionConfig poisson_config(std::int64_t n_hat, std::uint64_t accepted,
                                    std::uint64_t seed);
ReconstructionConfig normal_config(double x_hat, double sigma, std::uint64_t accepted,
                                   std::uint64_t seed);

/// Fixed-width histogram over [low, high].
struct Histogram {
  std::vector<double> edges;
  std::vector<std::uint64_t> counts;

  static Histogram uniform(double low, double high, int bins);
  void add(double x);
  void merge(const Histogram& other);
  std::uint64_t total() const;
};

struct ReconstructionResult {
  Histogram histogram;
  /// Reference-law probability of each bin, renormalized to the support.
  std::vector<double> model_mass;
  std::uint64_t accepted = 0;
  std::uint64_t trials = 0;
  double acceptance_rate = 0.0;
  double ks_statistic = 0.0;
  double ks_threshold = 0.0;
  bool pass = false;
  /// Pearson chi-square over bins with expected count >= 5; informational.
  double chi2 = 0.0;
  int chi2_dof = 0;
  /// Accepted parameter values, sorted ascending.
  std::vector<double> samples;
};

ReconstructionResult reconstruct_poisson_parameter(const ReconstructionConfig& config);
ReconstructionResult reconstruct_normal_parameter(const ReconstructionConfig& config);

/// Dispatches on config.target.
ReconstructionResult reconstruct(const ReconstructionConfig& config);

/// Poisson draw by cdf inversion with sequential search from zero. Consumes
/// exactly one uniform from `stream`. Requires 0 < mu <= kMaxPoissonSupport.
std::int64_t poisson_sample(double mu, CounterStream& stream);

/// D = max_i max(|i/N - F(x_i)|, |(i-1)/N - F(x_i)|) over sorted samples.
double ks_statistic(std::span<const double> sorted_samples,
                    const std::function<double(double)>& model_cdf);

/// c(0.01) / sqrt(N).
double ks_threshold(std::uint64_t n);

}  // namespace dualstat

#endif  // DUALSTAT_RECONSTRUCT_HPP_

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
/// \file identities.hpp
///
/// Residual evaluators for the exact identities linking each dual pair of
/// distributions. A residual near zero is the numerical statement that the
/// "variable" and "parameter" readings of one formula carry the same
/// probability.
///
/// Integrals of Gamma and Normal densities are cdf differences and the
/// infinite Poisson tails are cdf complements; nothing is truncated or
/// integrated by quadrature. Integrals with reversed limits come out signed.
///
#ifndef DUALSTAT_IDENTITIES_HPP_
#define DUALSTAT_IDENTITIES_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dualstat {

enum class IdentityId {
  kPoissonGamma,        // EQ5
  kNormalSelfDual,      // EQ8
  kNegBinomialBeta,     // EQ11
  kPoissonGammaUnit,    // EQ12
  kNormalObserved,      // EQ17
  kNormalObservedUnit,  // EQ18
};

/// Stable identifier used in serialized output: "EQ5", "EQ8", ...
std::string_view identity_tag(IdentityId id);
std::optional<IdentityId> identity_from_tag(std::string_view tag);

struct NamedValue {
  std::string name;
  double value = 0.0;
  bool integral = false;
};

struct IdentityTerm {
  std::string name;
  double value = 0.0;
};

struct IdentityReport {
  IdentityId id{};
  std::vector<NamedValue> inputs;
  std::vector<IdentityTerm> terms;
  /// The identity's right-hand side (0 or 1).
  double rhs = 0.0;
  /// term_sum() - rhs.
  double residual = 0.0;

  /// Left-to-right sum of the terms, in the order the residual was formed.
  double term_sum() const;
};

/// int_{mu1}^{mu2} g_m + sum_{i=n+1}^{m} f(i; mu2) + int_{mu2}^{mu1} g_n
///   - sum_{i=n+1}^{m} f(i; mu1) = 0, for mu1, mu2 >= 0 and m > n >= 0.
IdentityReport eq5_residual(double mu1, double mu2, std::int64_t n, std::int64_t m);

/// P(i > n_hat | mu1) + int_{mu1}^{mu2} g_{n_hat} + P(i <= n_hat | mu2) = 1.
IdentityReport eq12_residual(double mu1, double mu2, std::int64_t n_hat);

/// int_c^d phi(a; b, sigma) da - int_c^d phi(x; b, sigma) dx = 0, the first
/// integral read over the mean parameter and the second over the variable.
IdentityReport eq8_residual(double b, double c, double d, double sigma);

/// int_0^p beta(x; n, m) dx - sum_{k=0}^{m} P(k; n, p) = 0.
IdentityReport eq11_residual(double p, std::int64_t n, std::int64_t m);

/// Lower tail of the observable below x_hat - c, parameter mass on
/// [x_hat - c, x_hat + d], and the observable's upper tail above x_hat + d
/// sum to one for any real c and d.
IdentityReport eq17_residual(double x_hat, double c, double d, double sigma);

/// As eq17 with the tails taken from Normals centred at the interval ends;
/// requires c, d >= 0.
IdentityReport eq18_residual(double x_hat, double c, double d, double sigma);

/// Per-identity outcome of the randomized sweep.
struct SweepSummary {
  IdentityId id{};
  std::size_t count = 0;
  std::size_t failures = 0;
  double max_abs_residual = 0.0;
  IdentityReport worst;
};

/// Evaluates `count` pseudo-random tuples for each identity, drawn from
/// mu in [0, 50], n, m <= 60, |b|, |c|, |d|, |x_hat| <= 20 (c, d >= 0 for
/// EQ18), sigma in [0.1, 10] and p in [0, 1]. A tuple fails when
/// |residual| > threshold. Deterministic in `seed`.
std::vector<SweepSummary> identity_sweep(std::size_t count, std::uint64_t seed,
                                         double threshold = 1e-10);

}  // namespace dualstat

#endif  // DUALSTAT_IDENTITIES_HPP_

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

#include "dualstat/special_functions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "dualstat/errors.hpp"

namespace dualstat {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;
constexpr double kHalfLog2Pi = 0.91893853320467274178;  // ln(2 pi) / 2
constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kSqrt2Pi = 2.50662827463100050242;
constexpr double kEulerGamma = 0.577215664901532860607;

// zeta(k) for k = 2, 3, ..., 31.
constexpr std::array<double, 30> kZeta = {
    1.64493406684822643647, 1.2020569031595942854,  1.08232323371113819152,
    1.03692775514336992633, 1.01734306198444913971, 1.00834927738192282684,
    1.00407735619794433938, 1.00200839282608221442, 1.00099457512781808534,
    1.00049418860411946456, 1.0002460865533080483,  1.00012271334757848915,
    1.00006124813505870483, 1.00003058823630702049, 1.00001528225940865187,
    1.00000763719763789976, 1.00000381729326499984, 1.00000190821271655394,
    1.0000009539620338728,  1.00000047693298678781, 1.00000023845050272773,
    1.00000011921992596531, 1.00000005960818905126, 1.00000002980350351465,
    1.00000001490155482837, 1.00000000745071178984, 1.00000000372533402479,
    1.00000000186265972351, 1.00000000093132743242, 1.0000000004656629065,
};

constexpr double kStirlingSwitch = 10.0;
constexpr double kRootWindow = 0.25;

// ln Gamma(1 + eps) = -gamma eps + sum_k zeta(k) (-eps)^k / k, |eps| <= 0.25.
double log_gamma_near_one(double eps) {
  double sum = 0.0;
  double power = -eps;
  for (std::size_t i = 0; i < kZeta.size(); ++i) {
    power *= -eps;
    const double k = static_cast<double>(i + 2);
    sum += kZeta[i] * power / k;
  }
  return -kEulerGamma * eps + sum;
}

// Remainder of the Stirling series:
// ln Gamma(z) - [(z - 1/2) ln z - z + ln(2 pi)/2], for z >= 10.
double stirling_correction(double z) {
  static constexpr std::array<double, 8> kCoeff = {
      1.0 / 12.0,    -1.0 / 360.0,         1.0 / 1260.0, -1.0 / 1680.0,
      1.0 / 1188.0,  -691.0 / 360360.0,    1.0 / 156.0,  -3617.0 / 122400.0,
  };
  const double inv = 1.0 / z;
  const double inv2 = inv * inv;
  double sum = 0.0;
  for (auto it = kCoeff.rbegin(); it != kCoeff.rend(); ++it) {
    sum = sum * inv2 + *it;
  }
  return sum * inv;
}

void require_finite(double v, const char* what) {
  if (std::isnan(v)) {
    throw DomainError(std::string(what) + " is NaN");
  }
}

// ln of e^{-x} x^a / Gamma(a), the common prefix of both incomplete gamma
// expansions.
double log_gamma_prefix(double a, double x) {
  if (a < kStirlingSwitch) {
    return a * std::log(x) - x - log_gamma(a);
  }
  // Large shape: a ln x - x - ln Gamma(a) cancels badly, so factor out the
  // Stirling terms and keep a (ln t - t + 1) with t = x / a near zero.
  const double d = (x - a) / a;
  return a * (std::log1p(d) - d) + 0.5 * std::log(a) - kHalfLog2Pi -
         stirling_correction(a);
}

int series_cap(double a, const ToleranceConfig& tol) {
  return std::max(tol.max_iter, 100 + static_cast<int>(20.0 * std::sqrt(a)));
}

// P(a, x) by its power series; valid for x < a + 1.
double lower_gamma_series(double a, double x, const ToleranceConfig& tol) {
  double ap = a;
  double term = 1.0 / a;
  double sum = term;
  const int cap = series_cap(a, tol);
  for (int i = 0; i < cap; ++i) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * kEps) {
      return sum * std::exp(log_gamma_prefix(a, x));
    }
  }
  throw NumericError("reg_lower_inc_gamma: series did not converge");
}

// Q(a, x) by modified Lentz on the Legendre continued fraction; valid for
// x >= a + 1.
double upper_gamma_fraction(double a, double x, const ToleranceConfig& tol) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  const int cap = series_cap(a, tol);
  for (int i = 1; i <= cap; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) {
      return h * std::exp(log_gamma_prefix(a, x));
    }
  }
  throw NumericError("reg_upper_inc_gamma: continued fraction did not converge");
}

void check_gamma_args(double a, double x) {
  require_finite(a, "shape");
  require_finite(x, "x");
  if (!(a > 0.0) || std::isinf(a)) {
    throw DomainError("incomplete gamma: shape must be positive and finite");
  }
  if (x < 0.0) {
    throw DomainError("incomplete gamma: x must be non-negative");
  }
}

// Continued fraction for I_x(a, b) (Numerical Recipes betacf, modified Lentz).
double beta_fraction(double a, double b, double x, const ToleranceConfig& tol) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  const int cap = std::max(tol.max_iter,
                           100 + static_cast<int>(20.0 * std::sqrt(std::max(a, b))));
  for (int m = 1; m <= cap; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  throw NumericError("reg_inc_beta: continued fraction did not converge");
}

// Initial guess for the lower-tail normal quantile (Acklam's rational
// approximation, relative error about 1e-9).
double normal_quantile_guess(double p) {
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

// Quantile for p <= 1/2, refined by Halley steps on Phi.
double normal_quantile_lower(double p, const ToleranceConfig& tol) {
  double x = normal_quantile_guess(p);
  for (int i = 0; i < tol.max_iter; ++i) {
    const double e = std_normal_cdf(x) - p;
    const double u = e * kSqrt2Pi * std::exp(0.5 * x * x);
    const double step = u / (1.0 + 0.5 * x * u);
    x -= step;
    if (std::fabs(step) <= kEps * std::max(1.0, std::fabs(x))) break;
  }
  return x;
}

}  // namespace

void ToleranceConfig::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_iter < 1) {
    throw DomainError("ToleranceConfig: abs_tol, rel_tol must be > 0 and max_iter >= 1");
  }
}

double log_gamma(double z) {
  require_finite(z, "z");
  if (!(z > 0.0)) {
    throw DomainError("log_gamma: argument must be positive");
  }
  if (std::isinf(z)) return z;
  if (std::fabs(z - 1.0) <= kRootWindow) {
    return log_gamma_near_one(z - 1.0);
  }
  if (std::fabs(z - 2.0) <= kRootWindow) {
    const double eps = z - 2.0;
    return std::log1p(eps) + log_gamma_near_one(eps);
  }
  if (z >= kStirlingSwitch) {
    return (z - 0.5) * std::log(z) - z + kHalfLog2Pi + stirling_correction(z);
  }
  // Shift upward: ln Gamma(z) = ln Gamma(z + k) - ln(z (z+1) ... (z+k-1)).
  double shifted = z;
  double product = 1.0;
  while (shifted < kStirlingSwitch) {
    product *= shifted;
    shifted += 1.0;
  }
  return (shifted - 0.5) * std::log(shifted) - shifted + kHalfLog2Pi +
         stirling_correction(shifted) - std::log(product);
}

double reg_lower_inc_gamma(double a, double x, const ToleranceConfig& tol) {
  check_gamma_args(a, x);
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (x < a + 1.0) {
    return std::clamp(lower_gamma_series(a, x, tol), 0.0, 1.0);
  }
  return std::clamp(1.0 - upper_gamma_fraction(a, x, tol), 0.0, 1.0);
}

double reg_upper_inc_gamma(double a, double x, const ToleranceConfig& tol) {
  check_gamma_args(a, x);
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (x < a + 1.0) {
    return std::clamp(1.0 - lower_gamma_series(a, x, tol), 0.0, 1.0);
  }
  return std::clamp(upper_gamma_fraction(a, x, tol), 0.0, 1.0);
}

double reg_inc_beta(double a, double b, double x, const ToleranceConfig& tol) {
  require_finite(a, "a");
  require_finite(b, "b");
  require_finite(x, "x");
  if (!(a > 0.0) || !(b > 0.0) || std::isinf(a) || std::isinf(b)) {
    throw DomainError("reg_inc_beta: a and b must be positive and finite");
  }
  if (x < 0.0 || x > 1.0) {
    throw DomainError("reg_inc_beta: x must lie in [0, 1]");
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = a * std::log(x) + b * std::log1p(-x) -
                           (log_gamma(a) + log_gamma(b) - log_gamma(a + b));
  const double front = std::exp(log_front);
  double value;
  if (x < (a + 1.0) / (a + b + 2.0)) {
    value = front * beta_fraction(a, b, x, tol) / a;
  } else {
    value = 1.0 - front * beta_fraction(b, a, 1.0 - x, tol) / b;
  }
  return std::clamp(value, 0.0, 1.0);
}

double std_normal_cdf(double z) { return 0.5 * std::erfc(-z * kInvSqrt2); }

double std_normal_sf(double z) { return 0.5 * std::erfc(z * kInvSqrt2); }

double gamma_quantile(double a, double q, const ToleranceConfig& tol) {
  tol.validate();
  require_finite(a, "shape");
  require_finite(q, "q");
  if (!(a > 0.0) || std::isinf(a)) {
    throw DomainError("gamma_quantile: shape must be positive and finite");
  }
  if (!(q > 0.0 && q < 1.0)) {
    throw DomainError("gamma_quantile: q must lie in (0, 1)");
  }

  double lo = 0.0;
  double hi = a + 10.0 * std::sqrt(a) + 30.0;
  for (int i = 0; i < 64 && reg_lower_inc_gamma(a, hi, tol) < q; ++i) {
    lo = hi;
    hi *= 2.0;
  }

  // Wilson-Hilferty start.
  const double z = std_normal_quantile(q, tol);
  const double k = 1.0 / (9.0 * a);
  double x = a * std::pow(1.0 - k + z * std::sqrt(k), 3);
  if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);

  const double log_norm = log_gamma(a);
  double best_x = x;
  double best_f = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < tol.max_iter; ++iter) {
    const double f = reg_lower_inc_gamma(a, x, tol) - q;
    if (std::fabs(f) < std::fabs(best_f)) {
      best_f = f;
      best_x = x;
    }
    if (f == 0.0) return x;
    if (f < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    const double pdf = std::exp((a - 1.0) * std::log(x) - x - log_norm);
    double next = (pdf > 0.0 && std::isfinite(pdf)) ? x - f / pdf : lo - 1.0;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::fabs(next - x);
    x = next;
    const bool collapsed = hi - lo <= 4.0 * kEps * hi;
    if ((std::fabs(best_f) <= tol.abs_tol && step <= tol.rel_tol * x) || collapsed) {
      break;
    }
  }
  if (std::fabs(best_f) > tol.abs_tol) {
    throw NumericError("gamma_quantile: no convergence within max_iter");
  }
  return best_x;
}

double std_normal_quantile(double q, const ToleranceConfig& tol) {
  tol.validate();
  require_finite(q, "q");
  if (!(q > 0.0 && q < 1.0)) {
    throw DomainError("std_normal_quantile: q must lie in (0, 1)");
  }
  if (q == 0.5) return 0.0;
  if (q > 0.5) return -normal_quantile_lower(1.0 - q, tol);
  return normal_quantile_lower(q, tol);
}

}  // namespace dualstat

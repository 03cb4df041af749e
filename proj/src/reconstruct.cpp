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

#include "dualstat/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <string>
#include <thread>

#include "dualstat/distributions.hpp"
#include "dualstat/errors.hpp"
#include "dualstat/special_functions.hpp"

namespace dualstat {

namespace {

constexpr std::uint64_t kMaxTrialsWithoutAcceptance = 1'000'000'000;
constexpr int kMaxWorkers = 256;

// Box-Muller; each pair of uniforms yields two independent normals.
class NormalSampler {
 public:
  explicit NormalSampler(CounterStream& stream) : stream_(stream) {}

  double operator()() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double radius = std::sqrt(-2.0 * std::log(stream_.next_open_uniform()));
    const double angle = 2.0 * std::numbers::pi * stream_.next_uniform();
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  CounterStream& stream_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

struct WorkerOutput {
  Histogram histogram;
  std::vector<double> samples;
  std::uint64_t trials = 0;
};

struct Support {
  double low;
  double high;
};

// Each worker builds its own trial from its stream via `make_trial` and runs
// it until the worker's share of the accepted quota is met. Outputs are
// merged in worker-index order.
template <typename MakeTrial>
WorkerOutput run_workers(const ReconstructionConfig& config, Support support,
                         MakeTrial make_trial) {
  const auto workers = static_cast<std::uint64_t>(config.workers);
  std::vector<WorkerOutput> outputs(workers);

  auto work = [&](std::uint64_t w) {
    const std::uint64_t quota =
        config.target_accepted / workers + (w < config.target_accepted % workers ? 1 : 0);
    WorkerOutput& out = outputs[w];
    out.histogram = Histogram::uniform(support.low, support.high, config.bins);
    out.samples.reserve(quota);
    CounterStream stream(config.seed, w);
    auto trial = make_trial(stream);
    while (out.samples.size() < quota) {
      ++out.trials;
      if (const auto value = trial()) {
        out.samples.push_back(*value);
        out.histogram.add(*value);
      } else if (out.samples.empty() && out.trials >= kMaxTrialsWithoutAcceptance) {
        throw NumericError("reconstruction: no acceptance after 1e9 trials");
      }
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::exception_ptr> errors(workers);
    {
      std::vector<std::jthread> threads;
      threads.reserve(workers);
      for (std::uint64_t w = 0; w < workers; ++w) {
        threads.emplace_back([&, w] {
          try {
            work(w);
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
    }
    for (const auto& error : errors) {
      if (error) std::rethrow_exception(error);
    }
  }

  WorkerOutput merged;
  merged.histogram = Histogram::uniform(support.low, support.high, config.bins);
  merged.samples.reserve(config.target_accepted);
  for (const auto& out : outputs) {
    merged.histogram.merge(out.histogram);
    merged.samples.insert(merged.samples.end(), out.samples.begin(), out.samples.end());
    merged.trials += out.trials;
  }
  std::sort(merged.samples.begin(), merged.samples.end());
  return merged;
}

ReconstructionResult summarize(WorkerOutput merged, const std::function<double(double)>& cdf) {
  ReconstructionResult result;
  result.accepted = merged.samples.size();
  result.trials = merged.trials;
  result.acceptance_rate =
      static_cast<double>(result.accepted) / static_cast<double>(result.trials);
  result.ks_statistic = ks_statistic(merged.samples, cdf);
  result.ks_threshold = ks_threshold(result.accepted);
  result.pass = result.ks_statistic < result.ks_threshold;

  const auto& edges = merged.histogram.edges;
  const double n = static_cast<double>(result.accepted);
  result.model_mass.resize(merged.histogram.counts.size());
  int used_bins = 0;
  for (std::size_t i = 0; i < result.model_mass.size(); ++i) {
    result.model_mass[i] = cdf(edges[i + 1]) - cdf(edges[i]);
    const double expected = n * result.model_mass[i];
    if (expected >= 5.0) {
      const double diff = static_cast<double>(merged.histogram.counts[i]) - expected;
      result.chi2 += diff * diff / expected;
      ++used_bins;
    }
  }
  result.chi2_dof = std::max(used_bins - 1, 0);
  result.histogram = std::move(merged.histogram);
  result.samples = std::move(merged.samples);
  return result;
}

}  // namespace

double default_poisson_support(std::int64_t n_hat) {
  const double n = static_cast<double>(n_hat);
  return n + 10.0 * std::sqrt(n + 1.0) + 25.0;
}

ReconstructionConfig poisson_config(std::int64_t n_hat, std::uint64_t accepted,
                                    std::uint64_t seed) {
  ReconstructionConfig config;
  config.target = PoissonTarget{n_hat};
  config.support_bound = default_poisson_support(n_hat);
  config.target_accepted = accepted;
  config.seed = seed;
  return config;
}

ReconstructionConfig normal_config(double x_hat, double sigma, std::uint64_t accepted,
                                   std::uint64_t seed) {
  ReconstructionConfig config;
  config.target = NormalTarget{x_hat, sigma};
  config.support_bound = 10.0;
  config.accept_window = 0.01;
  config.target_accepted = accepted;
  config.seed = seed;
  return config;
}

void ReconstructionConfig::validate() const {
  if (bins < 10) throw ConfigError("bins must be at least 10");
  if (target_accepted < 1000) throw ConfigError("accepted sample count must be at least 1000");
  if (workers < 1 || workers > kMaxWorkers) {
    throw ConfigError("workers must lie in [1, " + std::to_string(kMaxWorkers) + "]");
  }
  if (!(support_bound > 0.0) || !std::isfinite(support_bound)) {
    throw ConfigError("support bound must be positive and finite");
  }
  if (const auto* poisson = std::get_if<PoissonTarget>(&target)) {
    if (poisson->n_hat < 0) throw ConfigError("n_hat must be non-negative");
    if (support_bound > kMaxPoissonSupport) {
      throw ConfigError("mu_max above the sampler limit of 700");
    }
    const double truncated =
        reg_upper_inc_gamma(static_cast<double>(poisson->n_hat) + 1.0, support_bound);
    if (!(truncated < kMaxTruncatedMass)) {
      throw ConfigError("mu_max too small: dual Gamma mass beyond it is not below 1e-9");
    }
    if (reference_shape && !(*reference_shape > 0.0 && std::isfinite(*reference_shape))) {
      throw ConfigError("reference shape must be positive");
    }
  } else {
    const auto& normal = std::get<NormalTarget>(target);
    if (!std::isfinite(normal.x_hat)) throw ConfigError("x_hat must be finite");
    if (!(normal.sigma > 0.0) || !std::isfinite(normal.sigma)) {
      throw ConfigError("sigma must be positive and finite");
    }
    if (!(accept_window > 0.0) || !(accept_window < support_bound)) {
      throw ConfigError("accept window must be positive and below the support half-width");
    }
    if (reference_shape) throw ConfigError("reference shape applies to Poisson targets only");
  }
}

Histogram Histogram::uniform(double low, double high, int bins) {
  Histogram h;
  h.edges.resize(static_cast<std::size_t>(bins) + 1);
  const double width = (high - low) / bins;
  for (int i = 0; i <= bins; ++i) h.edges[static_cast<std::size_t>(i)] = low + width * i;
  h.edges.back() = high;
  h.counts.assign(static_cast<std::size_t>(bins), 0);
  return h;
}

void Histogram::add(double x) {
  const double low = edges.front();
  const double width = (edges.back() - low) / static_cast<double>(counts.size());
  const auto last = static_cast<std::int64_t>(counts.size()) - 1;
  const auto bin = std::clamp(static_cast<std::int64_t>(std::floor((x - low) / width)),
                              std::int64_t{0}, last);
  ++counts[static_cast<std::size_t>(bin)];
}

void Histogram::merge(const Histogram& other) {
  for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i];
}

std::uint64_t Histogram::total() const {
  std::uint64_t sum = 0;
  for (auto c : counts) sum += c;
  return sum;
}

std::int64_t poisson_sample(double mu, CounterStream& stream) {
  if (!(mu > 0.0) || mu > kMaxPoissonSupport) {
    throw DomainError("poisson_sample: mu must lie in (0, 700]");
  }
  const double u = stream.next_uniform();
  std::int64_t n = 0;
  double mass = std::exp(-mu);
  double cdf = mass;
  while (u >= cdf) {
    ++n;
    mass *= mu / static_cast<double>(n);
    const double next = cdf + mass;
    // Past the mode the cdf saturates below 1 in floating point.
    if (next == cdf && static_cast<double>(n) > mu) break;
    cdf = next;
  }
  return n;
}

double ks_statistic(std::span<const double> sorted_samples,
                    const std::function<double(double)>& model_cdf) {
  if (sorted_samples.empty()) throw DomainError("ks_statistic: no samples");
  if (!std::is_sorted(sorted_samples.begin(), sorted_samples.end())) {
    throw DomainError("ks_statistic: samples must be sorted");
  }
  const double n = static_cast<double>(sorted_samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted_samples.size(); ++i) {
    const double f = model_cdf(sorted_samples[i]);
    const double above = static_cast<double>(i + 1) / n - f;
    const double below = f - static_cast<double>(i) / n;
    d = std::max({d, std::fabs(above), std::fabs(below)});
  }
  return d;
}

double ks_threshold(std::uint64_t n) {
  return kKsCritical001 / std::sqrt(static_cast<double>(n));
}

ReconstructionResult reconstruct_poisson_parameter(const ReconstructionConfig& config) {
  config.validate();
  const auto* target = std::get_if<PoissonTarget>(&config.target);
  if (target == nullptr) throw ConfigError("reconstruct_poisson_parameter: target is not Poisson");
  const std::int64_t n_hat = target->n_hat;
  const double mu_max = config.support_bound;

  auto make_trial = [n_hat, mu_max](CounterStream& stream) {
    return [n_hat, mu_max, &stream]() -> std::optional<double> {
      const double mu = mu_max * stream.next_uniform();
      if (mu == 0.0) {
        // Poisson(0) puts all mass at zero.
        return n_hat == 0 ? std::optional<double>(mu) : std::nullopt;
      }
      if (poisson_sample(mu, stream) == n_hat) return mu;
      return std::nullopt;
    };
  };
  WorkerOutput merged = run_workers(config, {0.0, mu_max}, make_trial);

  const double shape = config.reference_shape.value_or(static_cast<double>(n_hat) + 1.0);
  const double norm = reg_lower_inc_gamma(shape, mu_max);
  auto cdf = [shape, norm, mu_max](double mu) {
    return reg_lower_inc_gamma(shape, std::clamp(mu, 0.0, mu_max)) / norm;
  };
  return summarize(std::move(merged), cdf);
}

ReconstructionResult reconstruct_normal_parameter(const ReconstructionConfig& config) {
  config.validate();
  const auto* target = std::get_if<NormalTarget>(&config.target);
  if (target == nullptr) throw ConfigError("reconstruct_normal_parameter: target is not Normal");
  const double x_hat = target->x_hat;
  const double sigma = target->sigma;
  const double half_width = config.support_bound * sigma;
  const double window = config.accept_window * sigma;
  const double low = x_hat - half_width;

  auto make_trial = [=](CounterStream& stream) {
    return [=, &stream, normal = NormalSampler(stream)]() mutable -> std::optional<double> {
      const double a = low + 2.0 * half_width * stream.next_uniform();
      const double x = a + sigma * normal();
      if (std::fabs(x - x_hat) <= window) return a;
      return std::nullopt;
    };
  };
  WorkerOutput merged = run_workers(config, {low, x_hat + half_width}, make_trial);

  const NormalModel predicted(x_hat, sigma);
  auto cdf = [predicted](double a) { return normal_cdf(a, predicted); };
  return summarize(std::move(merged), cdf);
}

ReconstructionResult reconstruct(const ReconstructionConfig& config) {
  if (std::holds_alternative<PoissonTarget>(config.target)) {
    return reconstruct_poisson_parameter(config);
  }
  return reconstruct_normal_parameter(config);
}

}  // namespace dualstat

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <unordered_map>

#include "subopt/oracle.hpp"
#include "subopt/pgm.hpp"
#include "subopt/subset.hpp"

namespace subopt {

namespace rng {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Stateless counter hash: the value depends only on (seed, n, k), so draw
/// streams are reproducible and independent of evaluation interleaving.
inline std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t n, std::uint64_t k = 0) {
  return splitmix64(splitmix64(splitmix64(seed) ^ n) ^ (k * 0x9e3779b97f4a7c15ULL + 1));
}

inline double to_unit(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;  // [0, 1)
}

inline double uniform(std::uint64_t seed, std::uint64_t n, std::uint64_t k, double lo, double hi) {
  return lo + (hi - lo) * to_unit(counter_hash(seed, n, k));
}

/// Standard normal via Box-Muller on two counter draws.
inline double standard_normal(std::uint64_t seed, std::uint64_t n, std::uint64_t k) {
  const double u1 = to_unit(counter_hash(seed, n, 2 * k));
  const double u2 = to_unit(counter_hash(seed, n, 2 * k + 1));
  const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
  return r * std::cos(2.0 * 3.14159265358979323846 * u2);
}

}  // namespace rng

enum class NoiseKind { multiplicative, additive };
enum class NoiseDistribution { gaussian, uniform };

/// Description of an oracle noise stream: xi ~ D truncated to |xi| <= bound
/// by rejection, drawn fresh per query from the counter-based stream.
struct NoiseSpec {
  NoiseKind kind = NoiseKind::multiplicative;
  NoiseDistribution distribution = NoiseDistribution::gaussian;
  double mu = 1.0;     // gaussian mean
  double sigma = 0.0;  // gaussian std deviation
  double lo = 0.0;     // uniform bounds
  double hi = 0.0;
  double bound = std::numeric_limits<double>::infinity();  // omega
  std::uint64_t seed = 0;
  bool consistent = false;  // memoize xi per set (ablation mode, non-default)

  static NoiseSpec multiplicative_gaussian(double mu, double sigma, std::uint64_t seed,
                                           std::optional<double> omega = std::nullopt) {
    NoiseSpec s;
    s.kind = NoiseKind::multiplicative;
    s.distribution = NoiseDistribution::gaussian;
    s.mu = mu;
    s.sigma = sigma;
    s.seed = seed;
    s.bound = omega ? *omega : std::abs(mu) + 6.0 * sigma;
    return s;
  }

  static NoiseSpec additive_gaussian(double mu, double sigma, std::uint64_t seed,
                                     std::optional<double> omega = std::nullopt) {
    NoiseSpec s = multiplicative_gaussian(mu, sigma, seed, omega);
    s.kind = NoiseKind::additive;
    return s;
  }

  static NoiseSpec uniform_noise(NoiseKind kind, double lo, double hi, std::uint64_t seed) {
    NoiseSpec s;
    s.kind = kind;
    s.distribution = NoiseDistribution::uniform;
    s.lo = lo;
    s.hi = hi;
    s.seed = seed;
    s.bound = std::max(std::abs(lo), std::abs(hi));
    return s;
  }

  /// n-th noise value of the stream; rejection walks the sub-counter k.
  double draw(std::uint64_t n) const {
    for (std::uint64_t k = 0;; ++k) {
      double xi;
      if (distribution == NoiseDistribution::gaussian)
        xi = mu + sigma * rng::standard_normal(seed, n, k);
      else
        xi = rng::uniform(seed, n, k, lo, hi);
      if (std::abs(xi) <= bound) return xi;
    }
  }

  void validate() const {
    if (distribution == NoiseDistribution::gaussian) {
      if (kind == NoiseKind::multiplicative && mu <= 0.0)
        throw std::invalid_argument("NoiseSpec: multiplicative gaussian needs mu > 0");
      if (sigma < 0.0) throw std::invalid_argument("NoiseSpec: sigma must be >= 0");
    } else if (lo > hi) {
      throw std::invalid_argument("NoiseSpec: uniform bounds inverted");
    }
    if (!(bound > 0.0)) throw std::invalid_argument("NoiseSpec: truncation bound must be positive");
  }
};

/// Noisy view of a deterministic oracle: each evaluation draws a fresh xi
/// from the spec's stream and returns xi * H(S) or H(S) + xi. The wrapper's
/// own call counter indexes the stream.
inline ValueOracle wrap_noisy(const ValueOracle& base, const NoiseSpec& spec) {
  if (!base.deterministic()) throw std::invalid_argument("wrap_noisy: base oracle must be deterministic");
  spec.validate();
  struct State {
    std::uint64_t next_draw = 0;
    std::unordered_map<std::uint64_t, double> memo;  // consistent mode only
  };
  auto state = std::make_shared<State>();
  return ValueOracle(
      base.dim(),
      [&base, spec, state](const Subset& s) {
        double xi;
        if (spec.consistent) {
          auto [it, inserted] = state->memo.try_emplace(s.mask(), 0.0);
          if (inserted) it->second = spec.draw(state->next_draw++);
          xi = it->second;
        } else {
          xi = spec.draw(state->next_draw++);
        }
        const double h = base(s);
        return spec.kind == NoiseKind::multiplicative ? xi * h : h + xi;
      },
      /*deterministic=*/false, spec.seed);
}

/// Mean-of-m estimator: each evaluation averages m fresh draws of the noisy
/// oracle (its call counter advances by m per evaluation here).
inline ValueOracle mean_estimator(const ValueOracle& noisy, int m) {
  if (m < 1) throw std::invalid_argument("mean_estimator: m must be >= 1");
  return ValueOracle(
      noisy.dim(),
      [&noisy, m](const Subset& s) {
        double acc = 0.0;
        for (int i = 0; i < m; ++i) acc += noisy(s);
        return acc / static_cast<double>(m);
      },
      /*deterministic=*/false, noisy.seed());
}

namespace detail {

/// Ceil with forgiveness for float representation error: values within
/// 1e-9 (relative) of an integer round to it instead of up.
inline long long snapped_ceil(double x) {
  const double nearest = std::round(x);
  if (std::abs(x - nearest) <= 1e-9 * std::max(1.0, std::abs(x)))
    return static_cast<long long>(nearest);
  return static_cast<long long>(std::ceil(x));
}

}  // namespace detail

/// Derived iteration / sample budget for running the solver against an
/// approximate oracle with target accuracy eps_prime and confidence
/// 1 - delta_prime.
struct ApproxOracleBudget {
  double eps_prime = 0.0;
  double delta_prime = 0.0;
  int d = 0;
  double lipschitz = 0.0;
  double eps = 0.0;           // eps_prime / (8 d)
  double delta = 0.0;         // delta_prime eps_prime^2 / (32 d^2)
  long long iterations = 0;   // ceil((4 sqrt(d) L / eps_prime)^2)
  std::optional<long long> samples;  // ceil((omega H_max / eps)^2 ln(1/delta))
};

inline ApproxOracleBudget plan_budget(double eps_prime, double delta_prime, int d, double lipschitz,
                                      std::optional<NoiseSpec> spec = std::nullopt,
                                      std::optional<double> h_max = std::nullopt) {
  if (!(eps_prime > 0.0 && eps_prime < 1.0) || !(delta_prime > 0.0 && delta_prime < 1.0))
    throw std::domain_error("plan_budget: eps_prime and delta_prime must lie in (0,1)");
  if (d < 1) throw std::domain_error("plan_budget: d must be positive");
  if (lipschitz <= 0.0) throw std::domain_error("plan_budget: L must be positive");

  ApproxOracleBudget b;
  b.eps_prime = eps_prime;
  b.delta_prime = delta_prime;
  b.d = d;
  b.lipschitz = lipschitz;
  b.eps = eps_prime / (8.0 * d);
  b.delta = delta_prime * eps_prime * eps_prime / (32.0 * d * d);
  const double lr = lipschitz / eps_prime;
  b.iterations = detail::snapped_ceil(16.0 * d * lr * lr);
  if (spec && h_max) {
    if (!std::isfinite(spec->bound))
      throw std::domain_error("plan_budget: sample formula needs a finite truncation bound");
    const double base = spec->bound * (*h_max) / b.eps;
    b.samples = detail::snapped_ceil(base * base * std::log(1.0 / b.delta));
  }
  return b;
}

struct NoisyRunOverrides {
  std::optional<int> iterations;
  std::optional<int> samples;
};

struct NoisyPgmResult {
  PgmResult run;              // values as seen by the noisy oracle
  double audit_true_value;    // base oracle at the rounded set (reporting only)
  std::uint64_t base_calls;   // total base-oracle queries consumed
  int samples_per_query = 1;
};

/// Runs the solver against the mean-of-m estimator of a noisy wrapping of
/// `base`. Rounding happens inside the solver on the noisy oracle (the chain
/// set with the smallest noisy value); the true value of the returned set is
/// audited against the base oracle afterwards for reporting.
inline NoisyPgmResult minimize_noisy(const ValueOracle& base, const NoiseSpec& spec,
                                     const ApproxOracleBudget& budget, PgmConfig cfg = {},
                                     NoisyRunOverrides overrides = {}) {
  const int m = overrides.samples
                    ? *overrides.samples
                    : static_cast<int>(budget.samples.value_or(1));
  const long long t = overrides.iterations ? *overrides.iterations : budget.iterations;
  if (m < 1) throw std::invalid_argument("minimize_noisy: samples must be >= 1");
  if (t < 1) throw std::invalid_argument("minimize_noisy: iterations must be >= 1");
  cfg.iterations = static_cast<int>(t);

  const std::uint64_t base_before = base.call_count();
  const ValueOracle noisy = wrap_noisy(base, spec);
  const ValueOracle estimator = mean_estimator(noisy, m);

  NoisyPgmResult out;
  out.run = minimize(estimator, cfg);
  out.samples_per_query = m;
  out.audit_true_value = base(out.run.rounded_set);
  out.base_calls = base.call_count() - base_before;
  return out;
}

}  // namespace subopt

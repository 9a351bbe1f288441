#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "subopt/lovasz.hpp"
#include "subopt/oracle.hpp"
#include "subopt/subset.hpp"

namespace subopt {

enum class StepRule {
  fixed_theorem,  // eta = R / (L sqrt(T))
  fixed_sqrt,     // eta_t = c / sqrt(t)
  polyak,         // eta_t = (h_L(s^t) - h_best + gamma_t) / ||kappa^t||^2
};

struct PgmConfig {
  int iterations = 100;  // T
  StepRule step_rule = StepRule::fixed_theorem;
  std::optional<double> lipschitz;        // L; absent => running max of ||kappa^t||
  std::optional<double> radius;           // R; default 2 sqrt(d)
  std::optional<FractionalPoint> start;   // s^1; default all-0.5
  double step_scale = 0.0;                // c for fixed_sqrt; 0 => R / L_t
  std::uint64_t seed = 0;                 // carried into derived oracles by callers
  bool record_orderings = true;
};

struct PgmTracePoint {
  double lovasz_value;
  double subgradient_norm;
};

struct PgmResult {
  FractionalPoint best_point{std::vector<double>{}};
  double best_lovasz = 0.0;
  Subset rounded_set;
  double rounded_value = 0.0;
  std::vector<PgmTracePoint> trajectory;
  std::vector<std::vector<int>> orderings;  // one permutation per iteration when recorded
  std::uint64_t oracle_calls = 0;
  std::optional<double> alpha_T, beta_T;  // filled via empirical_alpha_beta when applicable
  bool lipschitz_estimated = false;
  double normalization_offset = 0.0;  // nonzero when the oracle needed shifting
};

/// Approximate projected subgradient method on [0,1]^d.
///
/// Each iteration sorts the current iterate, evaluates the d+1 chain values
/// (the only oracle access), differs them into the greedy vector, and steps
/// against it with the configured rule. The best h_L iterate is rounded by
/// its superlevel-set chain at the end. Total oracle calls:
/// 1 (normalization check) + T (d+1) + (d+1) (rounding). Deterministic for a
/// deterministic oracle and fixed config.
inline PgmResult minimize(const ValueOracle& oracle, const PgmConfig& cfg) {
  const int d = oracle.dim();
  if (cfg.iterations < 1) throw std::invalid_argument("minimize: iterations must be >= 1");
  if (cfg.lipschitz && *cfg.lipschitz <= 0.0)
    throw std::invalid_argument("minimize: Lipschitz constant must be positive");
  if (cfg.radius && *cfg.radius <= 0.0) throw std::invalid_argument("minimize: radius must be positive");
  if (cfg.start && cfg.start->dim() != d)
    throw std::invalid_argument("minimize: start point dimension mismatch");

  const double radius = cfg.radius ? *cfg.radius : 2.0 * std::sqrt(static_cast<double>(d));
  const std::uint64_t calls_before = oracle.call_count();

  const double h_empty = oracle(Subset::empty(d));
  const double offset = std::abs(h_empty) > 1e-9 ? h_empty : 0.0;
  const ValueOracle work = normalized_view(oracle, offset);

  FractionalPoint s = cfg.start ? *cfg.start : FractionalPoint::constant(d, 0.5);
  const int T = cfg.iterations;
  const double sqrt_T = std::sqrt(static_cast<double>(T));

  PgmResult result;
  result.normalization_offset = offset;
  result.lipschitz_estimated = !cfg.lipschitz.has_value();
  result.trajectory.reserve(static_cast<std::size_t>(T));
  if (cfg.record_orderings) result.orderings.reserve(static_cast<std::size_t>(T));

  double best_h = std::numeric_limits<double>::infinity();
  FractionalPoint best_s = s;
  double running_l = cfg.lipschitz ? *cfg.lipschitz : 0.0;
  double polyak_gamma0 = 0.0;

  for (int t = 1; t <= T; ++t) {
    const Ordering ord = order_coordinates(s);
    const std::vector<double> chain = detail::chain_values(work, ord);
    const GreedyVector g = detail::greedy_from_chain(ord, chain);
    const double h_val = g.dot(s);
    const double g_norm = g.norm2();

    result.trajectory.push_back({h_val, g_norm});
    if (cfg.record_orderings) result.orderings.push_back(ord.perm);
    if (h_val < best_h) {
      best_h = h_val;
      best_s = s;
    }
    if (t == 1) polyak_gamma0 = 0.1 * std::abs(h_val) + 1e-3;

    if (g_norm == 0.0) continue;  // stationary iteration, trajectory still advances

    if (!cfg.lipschitz) running_l = std::max(running_l, g_norm);
    double eta = 0.0;
    switch (cfg.step_rule) {
      case StepRule::fixed_theorem:
        eta = radius / ((cfg.lipschitz ? *cfg.lipschitz : running_l) * sqrt_T);
        break;
      case StepRule::fixed_sqrt: {
        const double c = cfg.step_scale > 0.0
                             ? cfg.step_scale
                             : radius / (cfg.lipschitz ? *cfg.lipschitz : running_l);
        eta = c / std::sqrt(static_cast<double>(t));
        break;
      }
      case StepRule::polyak: {
        const double gamma_t = polyak_gamma0 / std::sqrt(static_cast<double>(t));
        eta = (h_val - best_h + gamma_t) / (g_norm * g_norm);
        break;
      }
    }

    std::vector<double> next = s.coords();
    for (int i = 0; i < d; ++i) next[static_cast<std::size_t>(i)] -= eta * g.kappa[static_cast<std::size_t>(i)];
    s = project_box(next);
  }

  result.best_point = best_s;
  result.best_lovasz = best_h;
  auto [rounded, value] = round_by_superlevel(work, best_s);
  result.rounded_set = rounded;
  result.rounded_value = value;
  result.oracle_calls = oracle.call_count() - calls_before;
  return result;
}

/// Minimization of a non-increasing H via its complement: runs the solver on
/// H(V \ S) and maps the rounded chain set back. Assumes H(V) = 0 up to the
/// normalization tolerance (the complement's empty-set value); any residual
/// shift is reported in normalization_offset. Trajectory and best_point stay
/// in the complement parameterization.
inline PgmResult minimize_nonincreasing(const ValueOracle& oracle, const PgmConfig& cfg) {
  const ValueOracle complement = complement_view(oracle);
  PgmResult result = minimize(complement, cfg);
  result.rounded_set = result.rounded_set.complement();
  result.rounded_value += result.normalization_offset;
  return result;
}

/// Guarantee value F(S*)/alpha - beta G(S*) + R L / sqrt(T).
inline double certificate_bound(double f_opt, double g_opt, double alpha, double beta, double l,
                                double r, int t) {
  if (alpha <= 0.0 || beta <= 0.0)
    throw std::domain_error("certificate_bound: alpha and beta must be positive");
  if (t < 1) throw std::domain_error("certificate_bound: T must be >= 1");
  return f_opt / alpha - beta * g_opt + r * l / std::sqrt(static_cast<double>(t));
}

struct EmpiricalRatios {
  std::optional<double> alpha_T;
  std::optional<double> beta_T;
  int skipped_alpha = 0;  // zero-denominator terms left out of the average
  int skipped_beta = 0;
};

/// Trajectory-averaged submodularity ratios at the optimal set:
/// alpha_T averages F(S*)/kappa_F^t(S*), beta_T averages kappa_G^t(S*)/G(S*)
/// over the recorded orderings. Terms with zero denominators are skipped and
/// counted; the mean is taken over the remaining terms.
inline EmpiricalRatios empirical_alpha_beta(const ValueOracle& f_oracle,
                                            const ValueOracle& g_oracle,
                                            const std::vector<std::vector<int>>& orderings,
                                            const Subset& s_star) {
  if (orderings.empty()) throw std::invalid_argument("empirical_alpha_beta: no orderings recorded");
  const double f_star = f_oracle(s_star);
  const double g_star = g_oracle(s_star);

  double alpha_sum = 0.0, beta_sum = 0.0;
  int alpha_n = 0, beta_n = 0;
  EmpiricalRatios out;
  for (const auto& perm : orderings) {
    Ordering ord{perm};
    const GreedyVector kf = detail::greedy_from_chain(ord, detail::chain_values(f_oracle, ord));
    const double den = kf.sum_over(s_star);
    if (den == 0.0) {
      ++out.skipped_alpha;
    } else {
      alpha_sum += f_star / den;
      ++alpha_n;
    }
    if (g_star == 0.0) {
      ++out.skipped_beta;
    } else {
      const GreedyVector kg = detail::greedy_from_chain(ord, detail::chain_values(g_oracle, ord));
      beta_sum += kg.sum_over(s_star) / g_star;
      ++beta_n;
    }
  }
  if (alpha_n > 0) out.alpha_T = alpha_sum / alpha_n;
  if (beta_n > 0) out.beta_T = beta_sum / beta_n;
  if (!out.alpha_T && !out.beta_T)
    throw std::domain_error("empirical_alpha_beta: all terms degenerate");
  return out;
}

}  // namespace subopt

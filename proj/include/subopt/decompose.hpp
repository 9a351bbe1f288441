#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "subopt/exhaustive.hpp"
#include "subopt/oracle.hpp"
#include "subopt/subset.hpp"
#include "subopt/zoo.hpp"

namespace subopt {

/// Exact violation of alpha-weak DR-submodularity:
/// eps_H = min over i, A subseteq B subseteq V-i of H(i|A) - alpha H(i|B).
/// Negative values flag a violation; nonnegative means H already satisfies
/// the property. Exhaustive, d <= 14.
inline double violation_eps(const ValueOracle& oracle, double alpha) {
  const int d = oracle.dim();
  if (d > 14) throw std::invalid_argument("violation_eps: d > 14");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::domain_error("violation_eps: alpha must lie in (0,1]");

  const std::vector<double> table = tabulate(oracle);
  const std::uint64_t n = std::uint64_t{1} << d;
  double eps = std::numeric_limits<double>::infinity();
  std::vector<double> marg(n, 0.0);
  for (int i = 0; i < d; ++i) {
    for (std::uint64_t m = 0; m < n; ++m) {
      if ((m >> i) & 1u) continue;
      marg[m] = table[m | (std::uint64_t{1} << i)] - table[m];
    }
    const auto ext = detail::submask_extremes(marg, d, i);
    for (std::uint64_t b = 0; b < n; ++b) {
      if ((b >> i) & 1u) continue;
      const double v = ext.min_val[b] - alpha * marg[b];
      if (v < eps) eps = v;
    }
  }
  return eps;
}

enum class WitnessKind { cardinality, concave_cardinality };

/// Record of a constructed decomposition H = F - G: the witness G', its
/// strict-submodularity margin, the violation scale, and the modular
/// corrections applied on V^- = { i : F'(i | V-i) < 0 }.
struct DecompositionSpec {
  double alpha = 1.0;
  double beta = 1.0;
  double eps_h_lower = 0.0;   // supplied lower bound on the violation, <= 0
  WitnessKind witness = WitnessKind::cardinality;
  double witness_beta = 0.0;    // beta_target of the concave witness
  double witness_margin = 0.0;  // eps_{G'}
  double scale = 0.0;           // |eps_h_lower| / eps_{G'}
  Subset v_minus;
  std::vector<double> corrections;  // F'(i | V-i) for i in V^-, zero elsewhere
  std::optional<double> eps_h_actual;  // filled when verified exhaustively

  int dim() const { return v_minus.dim(); }

  double witness_value(const Subset& s) const {
    if (witness == WitnessKind::cardinality) return static_cast<double>(s.cardinality());
    return ConcaveCardinality(dim(), witness_beta).value(s);
  }

  /// scale * G'(S) - sum of corrections over S ∩ V^-; the part shared by F
  /// and G, evaluated with one composition so F - G reproduces H.
  double g_part(const Subset& s) const {
    double acc = scale * witness_value(s);
    for (int i : s.intersect(v_minus).elements()) acc -= corrections[static_cast<std::size_t>(i)];
    return acc;
  }
};

struct Decomposition {
  DecompositionSpec spec;
  ValueOracle f;  // H(S) + g_part(S); one H call per evaluation
  ValueOracle g;  // g_part(S); no H calls
};

/// Builds the F - G decomposition of an arbitrary H from a lower bound on
/// its alpha-weak DR-submodularity violation. The witness G' is the concave
/// cardinality instance for alpha = 1 and plain cardinality otherwise.
/// Construction costs d+1 oracle calls (the corrections); when `verify` is
/// set and d <= 14 the supplied lower bound is checked exhaustively.
/// The returned oracles reference `oracle`, which must outlive them.
inline Decomposition decompose(const ValueOracle& oracle, double alpha, double beta,
                               double eps_h_lower, bool verify = true) {
  const int d = oracle.dim();
  if (!(alpha > 0.0 && alpha <= 1.0) || !(beta > 0.0 && beta <= 1.0))
    throw std::domain_error("decompose: alpha, beta must lie in (0,1]");
  if (alpha * beta >= 1.0) throw std::domain_error("decompose: alpha * beta must be < 1");
  if (eps_h_lower > 0.0)
    throw std::domain_error("decompose: eps_h_lower must be <= 0 (scale convention)");

  DecompositionSpec spec;
  spec.alpha = alpha;
  spec.beta = beta;
  spec.eps_h_lower = eps_h_lower;
  if (alpha == 1.0) {
    const ConcaveCardinality witness(d, beta);
    spec.witness = WitnessKind::concave_cardinality;
    spec.witness_beta = beta;
    spec.witness_margin = witness.strict_margin();
  } else {
    spec.witness = WitnessKind::cardinality;
    spec.witness_margin = 1.0 - alpha;
  }
  spec.scale = -eps_h_lower / spec.witness_margin;

  if (verify && d <= 14) {
    spec.eps_h_actual = violation_eps(oracle, alpha);
    if (eps_h_lower > *spec.eps_h_actual)
      throw std::invalid_argument("decompose: eps_h_lower exceeds the actual violation");
  }

  // F'(i | V-i) = H(i | V-i) + scale * G'(i | V-i); d+1 oracle calls total.
  spec.corrections.assign(static_cast<std::size_t>(d), 0.0);
  spec.v_minus = Subset::empty(d);
  const Subset universe = Subset::universe(d);
  const double h_full = oracle(universe);
  const double gp_full = spec.scale * spec.witness_value(universe);
  for (int i = 0; i < d; ++i) {
    const Subset rest = universe.without(i);
    const double f_marg = (h_full - oracle(rest)) + (gp_full - spec.scale * spec.witness_value(rest));
    if (f_marg < 0.0) {
      spec.v_minus = spec.v_minus.with(i);
      spec.corrections[static_cast<std::size_t>(i)] = f_marg;
    }
  }

  ValueOracle f(d, [&oracle, spec](const Subset& s) { return oracle(s) + spec.g_part(s); });
  ValueOracle g(d, [spec](const Subset& s) { return spec.g_part(s); });
  return Decomposition{std::move(spec), std::move(f), std::move(g)};
}

/// Upper bound H(S-hat) <= H(S*)/alpha + (1/alpha - beta) G(S*) + eps implied
/// by the decomposition, evaluated for a given optimal set and its H value.
inline double decomposition_bound(const DecompositionSpec& spec, const Subset& s_star,
                                  double h_star, double eps) {
  return h_star / spec.alpha + (1.0 / spec.alpha - spec.beta) * spec.g_part(s_star) + eps;
}

}  // namespace subopt

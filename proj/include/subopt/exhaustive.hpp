#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "subopt/oracle.hpp"
#include "subopt/subset.hpp"

namespace subopt {

/// F(i | A) = F(A + i) - F(A). Exactly two oracle calls.
inline double marginal_gain(const ValueOracle& oracle, int i, const Subset& a) {
  if (a.contains(i))
    throw std::invalid_argument("marginal_gain: element " + std::to_string(i) + " already present");
  const double with_i = oracle(a.with(i));
  const double without_i = oracle(a);
  return with_i - without_i;
}

/// Exhaustive global minimizer over all 2^d subsets.
/// Ties break toward the smaller cardinality, then the smaller mask.
inline std::pair<Subset, double> brute_force_min(const ValueOracle& oracle,
                                                 bool allow_large = false) {
  const int d = oracle.dim();
  const int limit = allow_large ? 25 : 20;
  if (d > limit)
    throw std::invalid_argument("brute_force_min: d = " + std::to_string(d) +
                                " exceeds limit " + std::to_string(limit));
  if (!oracle.deterministic())
    throw std::invalid_argument("brute_force_min: stochastic oracle rejected");

  Subset best = Subset::empty(d);
  double best_value = oracle(best);
  const std::uint64_t n = std::uint64_t{1} << d;
  for (std::uint64_t m = 1; m < n; ++m) {
    const Subset s(m, d);
    const double v = oracle(s);
    if (v < best_value || (v == best_value && tie_less(s, best))) {
      best = s;
      best_value = v;
    }
  }
  return {best, best_value};
}

enum class MonotoneDirection { non_decreasing, non_increasing };

struct DrWitness {
  int element = -1;
  Subset inner;  // A
  Subset outer;  // B, with A subset of B
};

/// Extremal weak-DR parameters of a monotone set function, with the pairs
/// attaining them. For non-decreasing functions alpha, beta lie in (0, 1];
/// for non-increasing ones they are >= 1 (infinity when no finite parameter
/// satisfies the definition, which happens with mixed zero marginals).
struct DrParameters {
  double alpha = 1.0;
  double beta = 1.0;
  DrWitness witness_alpha;
  DrWitness witness_beta;
};

struct NotMonotoneError : std::domain_error {
  NotMonotoneError(int i, const Subset& a, double marg, MonotoneDirection dir)
      : std::domain_error("not monotone " +
                          std::string(dir == MonotoneDirection::non_decreasing ? "non-decreasing"
                                                                               : "non-increasing") +
                          ": marginal of element " + std::to_string(i) + " at " + a.to_string() +
                          " is " + std::to_string(marg)),
        element(i),
        at(a),
        marginal(marg) {}
  int element;
  Subset at;
  double marginal;
};

namespace detail {

// Subset-min / subset-max DP over submasks of `space` (masks not meeting bit i
// are iterated directly; transitions drop one element at a time).
struct SubmaskExtremes {
  std::vector<double> min_val, max_val, max_neg;  // max_neg: max over strictly negative entries
  std::vector<std::uint64_t> min_arg, max_arg, max_neg_arg;
};

inline SubmaskExtremes submask_extremes(const std::vector<double>& marg, int d, int skip_bit) {
  const std::uint64_t n = std::uint64_t{1} << d;
  const double inf = std::numeric_limits<double>::infinity();
  SubmaskExtremes out;
  out.min_val.assign(n, inf);
  out.max_val.assign(n, -inf);
  out.max_neg.assign(n, -inf);
  out.min_arg.assign(n, 0);
  out.max_arg.assign(n, 0);
  out.max_neg_arg.assign(n, 0);
  for (std::uint64_t m = 0; m < n; ++m) {
    if ((m >> skip_bit) & 1u) continue;
    double mn = marg[m], mx = marg[m];
    std::uint64_t mn_a = m, mx_a = m;
    double mneg = marg[m] < 0.0 ? marg[m] : -inf;
    std::uint64_t mneg_a = m;
    for (std::uint64_t rest = m; rest != 0; rest &= rest - 1) {
      const std::uint64_t sub = m & ~(rest & (~rest + 1));
      if (out.min_val[sub] < mn) { mn = out.min_val[sub]; mn_a = out.min_arg[sub]; }
      if (out.max_val[sub] > mx) { mx = out.max_val[sub]; mx_a = out.max_arg[sub]; }
      if (out.max_neg[sub] > mneg) { mneg = out.max_neg[sub]; mneg_a = out.max_neg_arg[sub]; }
    }
    out.min_val[m] = mn;   out.min_arg[m] = mn_a;
    out.max_val[m] = mx;   out.max_arg[m] = mx_a;
    out.max_neg[m] = mneg; out.max_neg_arg[m] = mneg_a;
  }
  return out;
}

}  // namespace detail

/// Scans every (i, A subseteq B subseteq V-i) pair for the extremal ratios of
/// Definition 1-style weak DR parameters. Pairs whose reference marginal is
/// zero are vacuous and skipped; a zero marginal against a nonzero reference
/// forces the parameter to its degenerate extreme (0 resp. infinity).
/// Requires a deterministic oracle, d <= 16, and monotonicity in the stated
/// direction (checked exhaustively first).
inline DrParameters estimate_dr_parameters(const ValueOracle& oracle, MonotoneDirection direction) {
  const int d = oracle.dim();
  if (d > 16) throw std::invalid_argument("estimate_dr_parameters: d > 16");
  if (!oracle.deterministic())
    throw std::invalid_argument("estimate_dr_parameters: stochastic oracle rejected");

  const std::vector<double> table = tabulate(oracle);
  const std::uint64_t n = std::uint64_t{1} << d;
  const bool increasing = direction == MonotoneDirection::non_decreasing;

  // Monotonicity pre-check on single-element marginals; also detects the
  // all-zero degenerate case.
  bool any_nonzero = false;
  for (int i = 0; i < d; ++i) {
    for (std::uint64_t m = 0; m < n; ++m) {
      if ((m >> i) & 1u) continue;
      const double marg = table[m | (std::uint64_t{1} << i)] - table[m];
      if (marg != 0.0) any_nonzero = true;
      if (increasing ? (marg < 0.0) : (marg > 0.0))
        throw NotMonotoneError(i, Subset(m, d), marg, direction);
    }
  }
  if (!any_nonzero)
    throw std::domain_error("estimate_dr_parameters: every marginal is zero");

  const double inf = std::numeric_limits<double>::infinity();
  DrParameters out;
  out.alpha = increasing ? inf : -inf;
  out.beta = increasing ? inf : -inf;
  bool alpha_seen = false, beta_seen = false;

  std::vector<double> marg(n, 0.0);
  for (int i = 0; i < d; ++i) {
    for (std::uint64_t m = 0; m < n; ++m) {
      if ((m >> i) & 1u) continue;
      marg[m] = table[m | (std::uint64_t{1} << i)] - table[m];
    }
    const auto ext = detail::submask_extremes(marg, d, i);
    for (std::uint64_t b = 0; b < n; ++b) {
      if ((b >> i) & 1u) continue;
      const double mb = marg[b];
      if (increasing) {
        // alpha: minimize F(i|A)/F(i|B) over A in B, F(i|B) > 0.
        if (mb > 0.0) {
          const double r = ext.min_val[b] / mb;
          if (!alpha_seen || r < out.alpha) {
            out.alpha = r;
            out.witness_alpha = {i, Subset(ext.min_arg[b], d), Subset(b, d)};
            alpha_seen = true;
          }
        }
        // beta: minimize F(i|B)/F(i|A) over A in B, F(i|A) > 0.
        if (ext.max_val[b] > 0.0) {
          const double r = mb / ext.max_val[b];
          if (!beta_seen || r < out.beta) {
            out.beta = r;
            out.witness_beta = {i, Subset(ext.max_arg[b], d), Subset(b, d)};
            beta_seen = true;
          }
        }
      } else {
        // Non-increasing: marginals <= 0, parameters >= 1; the binding ratio
        // is the largest one.
        if (mb < 0.0) {
          const double r = ext.min_val[b] / mb;  // most negative numerator
          if (!alpha_seen || r > out.alpha) {
            out.alpha = r;
            out.witness_alpha = {i, Subset(ext.min_arg[b], d), Subset(b, d)};
            alpha_seen = true;
          }
        } else if (ext.min_val[b] < 0.0) {
          // F(i|B) = 0 but some F(i|A) < 0: no finite alpha.
          out.alpha = inf;
          out.witness_alpha = {i, Subset(ext.min_arg[b], d), Subset(b, d)};
          alpha_seen = true;
        }
        if (mb < 0.0 && ext.max_val[b] == 0.0) {
          // some F(i|A) = 0 with F(i|B) < 0: no finite beta.
          out.beta = inf;
          out.witness_beta = {i, Subset(ext.max_arg[b], d), Subset(b, d)};
          beta_seen = true;
        } else if (ext.max_neg[b] > -inf) {
          const double r = mb / ext.max_neg[b];
          if (!beta_seen || r > out.beta) {
            out.beta = r;
            out.witness_beta = {i, Subset(ext.max_neg_arg[b], d), Subset(b, d)};
            beta_seen = true;
          }
        }
      }
    }
  }
  if (!alpha_seen || !beta_seen)
    throw std::domain_error("estimate_dr_parameters: no usable marginal-ratio pairs");
  return out;
}

}  // namespace subopt

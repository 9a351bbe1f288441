#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "subopt/subset.hpp"

namespace subopt {

/// Counted value-oracle access to a set function S -> H(S).
///
/// Every operator() call bumps the counter by exactly one; wrappers built on
/// top of an oracle (noise, mean estimators, normalization) keep their own
/// counters, so the per-layer query cost stays observable. Deterministic
/// oracles must return bitwise-identical values for repeated queries.
class ValueOracle {
 public:
  using Fn = std::function<double(const Subset&)>;

  ValueOracle(int d, Fn fn, bool deterministic = true,
              std::optional<std::uint64_t> seed = std::nullopt)
      : d_(d), fn_(std::move(fn)), deterministic_(deterministic), seed_(seed) {
    if (d < 1 || d > 64) throw std::invalid_argument("ValueOracle: dimension out of range");
    if (!deterministic_ && !seed_) throw std::invalid_argument("ValueOracle: stochastic oracle needs a seed");
  }

  double operator()(const Subset& s) const {
    if (s.dim() != d_) throw std::invalid_argument("ValueOracle: subset dimension mismatch");
    ++calls_;
    return fn_(s);
  }

  int dim() const { return d_; }
  bool deterministic() const { return deterministic_; }
  std::optional<std::uint64_t> seed() const { return seed_; }
  std::uint64_t call_count() const { return calls_; }
  void reset_count() const { calls_ = 0; }

 private:
  int d_;
  Fn fn_;
  bool deterministic_;
  std::optional<std::uint64_t> seed_;
  mutable std::uint64_t calls_ = 0;
};

/// Modular oracle S -> sum of weights over S.
inline ValueOracle make_modular_oracle(std::vector<double> weights) {
  const int d = static_cast<int>(weights.size());
  return ValueOracle(d, [w = std::move(weights)](const Subset& s) {
    double acc = 0.0;
    for (int i : s.elements()) acc += w[static_cast<std::size_t>(i)];
    return acc;
  });
}

/// Oracle backed by a dense table of all 2^d values (mask-indexed).
inline ValueOracle make_table_oracle(std::vector<double> table, int d) {
  if (table.size() != (std::uint64_t{1} << d))
    throw std::invalid_argument("make_table_oracle: table size must be 2^d");
  return ValueOracle(d, [t = std::move(table)](const Subset& s) { return t[s.mask()]; });
}

/// Evaluates all 2^d values of a deterministic oracle, mask-indexed.
inline std::vector<double> tabulate(const ValueOracle& oracle) {
  const int d = oracle.dim();
  if (d > 25) throw std::invalid_argument("tabulate: dimension too large");
  std::vector<double> table(std::uint64_t{1} << d);
  for_each_subset(d, [&](const Subset& s) { table[s.mask()] = oracle(s); });
  return table;
}

/// View of `base` shifted so the empty set maps to zero. Calls pass through to
/// `base` (and count there); this wrapper adds no counter of its own use.
inline ValueOracle normalized_view(const ValueOracle& base, double empty_value) {
  return ValueOracle(
      base.dim(), [&base, empty_value](const Subset& s) { return base(s) - empty_value; },
      base.deterministic(), base.seed());
}

/// View of `base` evaluated at the complement: S -> H(V \ S).
inline ValueOracle complement_view(const ValueOracle& base) {
  return ValueOracle(
      base.dim(), [&base](const Subset& s) { return base(s.complement()); },
      base.deterministic(), base.seed());
}

}  // namespace subopt

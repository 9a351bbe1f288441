#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "subopt/oracle.hpp"
#include "subopt/subset.hpp"

namespace subopt {

/// Point in the box [0,1]^d; coordinates are clamped on construction.
class FractionalPoint {
 public:
  explicit FractionalPoint(std::vector<double> coords) : s_(std::move(coords)) {
    for (double& x : s_) x = std::clamp(x, 0.0, 1.0);
  }

  static FractionalPoint constant(int d, double value) {
    return FractionalPoint(std::vector<double>(static_cast<std::size_t>(d), value));
  }

  static FractionalPoint indicator(const Subset& s) {
    std::vector<double> v(static_cast<std::size_t>(s.dim()), 0.0);
    for (int i : s.elements()) v[static_cast<std::size_t>(i)] = 1.0;
    return FractionalPoint(std::move(v));
  }

  int dim() const { return static_cast<int>(s_.size()); }
  double operator[](int i) const { return s_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& coords() const { return s_; }

 private:
  std::vector<double> s_;
};

/// Coordinate-wise projection onto [0,1]^d.
inline FractionalPoint project_box(const std::vector<double>& x) { return FractionalPoint(x); }

/// Decreasing ordering of the coordinates of a point, ties broken by
/// ascending element index. Prefix sets S_k = {j_1, ..., j_k} form the chain
/// used by the greedy subgradient and the rounding step.
struct Ordering {
  std::vector<int> perm;  // j_1, ..., j_d

  int dim() const { return static_cast<int>(perm.size()); }

  Subset prefix_set(int k) const {
    Subset s = Subset::empty(dim());
    for (int t = 0; t < k; ++t) s = s.with(perm[static_cast<std::size_t>(t)]);
    return s;
  }
};

inline Ordering order_coordinates(const FractionalPoint& s) {
  Ordering o;
  o.perm.resize(static_cast<std::size_t>(s.dim()));
  std::iota(o.perm.begin(), o.perm.end(), 0);
  std::sort(o.perm.begin(), o.perm.end(),
            [&](int a, int b) { return s[a] > s[b] || (s[a] == s[b] && a < b); });
  return o;
}

/// Edmonds' greedy vector: kappa[j_k] = H(S_k) - H(S_{k-1}) along the chain
/// of an ordering. Doubles as an approximate subgradient of the convex
/// closure when H is only approximately submodular.
struct GreedyVector {
  std::vector<double> kappa;
  Ordering ordering;

  double dot(const FractionalPoint& s) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < kappa.size(); ++i) acc += kappa[i] * s[static_cast<int>(i)];
    return acc;
  }

  /// kappa(A) = sum of entries over A.
  double sum_over(const Subset& a) const {
    double acc = 0.0;
    for (int i : a.elements()) acc += kappa[static_cast<std::size_t>(i)];
    return acc;
  }

  double norm2() const {
    double acc = 0.0;
    for (double k : kappa) acc += k * k;
    return std::sqrt(acc);
  }
};

namespace detail {

/// Chain evaluation H(S_0), ..., H(S_d) for an ordering: exactly d+1 calls.
inline std::vector<double> chain_values(const ValueOracle& oracle, const Ordering& ord) {
  const int d = ord.dim();
  std::vector<double> values(static_cast<std::size_t>(d) + 1);
  Subset s = Subset::empty(d);
  values[0] = oracle(s);
  for (int k = 1; k <= d; ++k) {
    s = s.with(ord.perm[static_cast<std::size_t>(k - 1)]);
    values[static_cast<std::size_t>(k)] = oracle(s);
  }
  return values;
}

inline GreedyVector greedy_from_chain(const Ordering& ord, const std::vector<double>& chain) {
  GreedyVector g;
  g.ordering = ord;
  g.kappa.resize(static_cast<std::size_t>(ord.dim()));
  for (int k = 1; k <= ord.dim(); ++k)
    g.kappa[static_cast<std::size_t>(ord.perm[static_cast<std::size_t>(k - 1)])] =
        chain[static_cast<std::size_t>(k)] - chain[static_cast<std::size_t>(k - 1)];
  return g;
}

}  // namespace detail

/// Greedy subgradient at s: exactly d+1 oracle calls (the chain values);
/// marginals are obtained by differencing consecutive chain values.
inline GreedyVector greedy_subgradient(const ValueOracle& oracle, const FractionalPoint& s) {
  const Ordering ord = order_coordinates(s);
  return detail::greedy_from_chain(ord, detail::chain_values(oracle, ord));
}

/// Lovasz extension value h_L(s) = kappa . s. Requires a normalized oracle
/// (|H(empty)| <= 1e-9); the check reuses the first chain value, so the call
/// count stays d+1.
inline double lovasz_value(const ValueOracle& oracle, const FractionalPoint& s) {
  const Ordering ord = order_coordinates(s);
  const std::vector<double> chain = detail::chain_values(oracle, ord);
  if (std::abs(chain[0]) > 1e-9)
    throw std::domain_error("lovasz_value: oracle not normalized, H(empty) = " +
                            std::to_string(chain[0]));
  return detail::greedy_from_chain(ord, chain).dot(s);
}

/// Superlevel-set rounding: evaluates H on the d+1 chain sets of s and
/// returns the argmin (ties to the smallest k, i.e. the smallest set).
inline std::pair<Subset, double> round_by_superlevel(const ValueOracle& oracle,
                                                     const FractionalPoint& s) {
  const Ordering ord = order_coordinates(s);
  const std::vector<double> chain = detail::chain_values(oracle, ord);
  int best_k = 0;
  for (int k = 1; k <= ord.dim(); ++k)
    if (chain[static_cast<std::size_t>(k)] < chain[static_cast<std::size_t>(best_k)]) best_k = k;
  return {ord.prefix_set(best_k), chain[static_cast<std::size_t>(best_k)]};
}

}  // namespace subopt

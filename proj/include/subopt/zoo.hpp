#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "subopt/noise.hpp"
#include "subopt/oracle.hpp"
#include "subopt/subset.hpp"

namespace subopt {

/// Graph cut objective over free nodes, with optional per-node terminal
/// weights (folded source/sink arcs). Values are normalized so F(empty) = 0.
class CutInstance {
 public:
  struct Arc {
    int from, to;
    double weight;
  };

  CutInstance(int d, std::vector<Arc> arcs, std::vector<double> source_gain = {},
              std::vector<double> sink_gain = {})
      : d_(d), arcs_(std::move(arcs)), source_gain_(std::move(source_gain)),
        sink_gain_(std::move(sink_gain)) {
    if (d < 1) throw std::invalid_argument("CutInstance: d must be >= 1");
    for (const Arc& a : arcs_)
      if (a.from < 0 || a.from >= d || a.to < 0 || a.to >= d || a.weight < 0.0)
        throw std::invalid_argument("CutInstance: bad arc");
    if (!source_gain_.empty() && static_cast<int>(source_gain_.size()) != d)
      throw std::invalid_argument("CutInstance: source_gain size");
    if (!sink_gain_.empty() && static_cast<int>(sink_gain_.size()) != d)
      throw std::invalid_argument("CutInstance: sink_gain size");
  }

  /// Undirected graph: each edge counts once whenever it crosses the cut.
  static CutInstance undirected(int d, const std::vector<std::tuple<int, int, double>>& edges) {
    std::vector<Arc> arcs;
    arcs.reserve(edges.size() * 2);
    for (const auto& [u, v, w] : edges) {
      arcs.push_back({u, v, w});
      arcs.push_back({v, u, w});
    }
    return CutInstance(d, std::move(arcs));
  }

  static CutInstance path(int d, double weight = 1.0) {
    std::vector<std::tuple<int, int, double>> edges;
    for (int i = 0; i + 1 < d; ++i) edges.emplace_back(i, i + 1, weight);
    return undirected(d, edges);
  }

  int dim() const { return d_; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  bool has_terminals() const { return !source_gain_.empty() || !sink_gain_.empty(); }

  /// Crossing-arc weight plus modular terminal terms, normalized to 0 at the
  /// empty set: sum_{v in S} (sink_gain[v] - source_gain[v]) absorbs the
  /// constant source-side contribution.
  double value(const Subset& s) const {
    double acc = 0.0;
    for (const Arc& a : arcs_)
      if (s.contains(a.from) && !s.contains(a.to)) acc += a.weight;
    for (int v : s.elements()) {
      if (!sink_gain_.empty()) acc += sink_gain_[static_cast<std::size_t>(v)];
      if (!source_gain_.empty()) acc -= source_gain_[static_cast<std::size_t>(v)];
    }
    return acc;
  }

  ValueOracle oracle() const {
    return ValueOracle(d_, [inst = *this](const Subset& s) { return inst.value(s); });
  }

 private:
  int d_;
  std::vector<Arc> arcs_;
  std::vector<double> source_gain_, sink_gain_;
};

/// Synthetic layered max-flow instance: `layers` x `width` grid of free
/// nodes, seeded integer capacities, source feeding the first layer and the
/// last layer draining to the sink.
inline CutInstance make_layered_cut(int layers, int width, std::uint64_t seed, int cap_lo = 1,
                                    int cap_hi = 10) {
  if (layers < 2 || width < 1) throw std::invalid_argument("make_layered_cut: bad shape");
  const int d = layers * width;
  auto node = [&](int layer, int i) { return layer * width + i; };
  auto cap = [&](std::uint64_t n) {
    return static_cast<double>(cap_lo + static_cast<int>(rng::counter_hash(seed, n) %
                                                         static_cast<std::uint64_t>(cap_hi - cap_lo + 1)));
  };

  std::vector<CutInstance::Arc> arcs;
  std::uint64_t n = 0;
  for (int l = 0; l + 1 < layers; ++l) {
    for (int i = 0; i < width; ++i) {
      arcs.push_back({node(l, i), node(l + 1, i), cap(n++)});
      if (width > 1) arcs.push_back({node(l, i), node(l + 1, (i + 1) % width), cap(n++)});
    }
  }
  // in-layer chains keep the frames connected
  for (int l = 0; l < layers; ++l)
    for (int i = 0; i + 1 < width; ++i) {
      const double w = cap(n++);
      arcs.push_back({node(l, i), node(l, i + 1), w});
      arcs.push_back({node(l, i + 1), node(l, i), w});
    }

  std::vector<double> source_gain(static_cast<std::size_t>(d), 0.0);
  std::vector<double> sink_gain(static_cast<std::size_t>(d), 0.0);
  for (int i = 0; i < width; ++i) {
    source_gain[static_cast<std::size_t>(node(0, i))] = cap(n++);
    sink_gain[static_cast<std::size_t>(node(layers - 1, i))] = cap(n++);
  }
  return CutInstance(d, std::move(arcs), std::move(source_gain), std::move(sink_gain));
}

/// Two interleaved point clusters with a Gaussian-similarity graph and a few
/// labeled anchors folded in as terminal unaries; a self-contained stand-in
/// for semi-supervised clustering cut objectives.
inline CutInstance make_two_moons_cut(int d, std::uint64_t seed, int labeled_per_class = 2,
                                      double label_weight = 4.0) {
  if (d < 4 || d % 2 != 0) throw std::invalid_argument("make_two_moons_cut: d must be even, >= 4");
  const int half = d / 2;
  std::vector<double> xs(static_cast<std::size_t>(d)), ys(static_cast<std::size_t>(d));
  const double pi = 3.14159265358979323846;
  for (int i = 0; i < d; ++i) {
    const bool upper = i < half;
    const double t = pi * (static_cast<double>(i % half) + 0.5) / half;
    const double jx = 0.1 * (rng::to_unit(rng::counter_hash(seed, static_cast<std::uint64_t>(i), 0)) - 0.5);
    const double jy = 0.1 * (rng::to_unit(rng::counter_hash(seed, static_cast<std::uint64_t>(i), 1)) - 0.5);
    if (upper) {
      xs[static_cast<std::size_t>(i)] = std::cos(t) + jx;
      ys[static_cast<std::size_t>(i)] = std::sin(t) + jy;
    } else {
      xs[static_cast<std::size_t>(i)] = 1.0 - std::cos(t) + jx;
      ys[static_cast<std::size_t>(i)] = 0.5 - std::sin(t) + jy;
    }
  }
  std::vector<std::tuple<int, int, double>> edges;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      const double dx = xs[i] - xs[j], dy = ys[i] - ys[j];
      const double sim = std::exp(-(dx * dx + dy * dy) / 0.5);
      if (sim > 0.05) edges.emplace_back(i, j, sim);
    }
  CutInstance base = CutInstance::undirected(d, edges);

  std::vector<double> source_gain(static_cast<std::size_t>(d), 0.0);
  std::vector<double> sink_gain(static_cast<std::size_t>(d), 0.0);
  for (int k = 0; k < labeled_per_class && k < half; ++k) {
    source_gain[static_cast<std::size_t>(k * (half / labeled_per_class))] = label_weight;       // class A anchors
    sink_gain[static_cast<std::size_t>(half + k * (half / labeled_per_class))] = label_weight;  // class B anchors
  }
  return CutInstance(d, base.arcs(), std::move(source_gain), std::move(sink_gain));
}

/// Strictly submodular concave-of-cardinality witness: G'(S) = g(|S|) with
/// g(x) = a x^2 / 2 + (1 - a/2) x and a = (beta - 1)/(d - 1). Non-decreasing
/// (1, beta)-weakly DR-modular; its strict submodularity margin is -a.
class ConcaveCardinality {
 public:
  ConcaveCardinality(int d, double beta_target)
      : d_(d), beta_(beta_target), a_((beta_target - 1.0) / (d - 1)) {
    if (d < 2) throw std::invalid_argument("ConcaveCardinality: d must be >= 2");
    if (!(beta_target > 0.0 && beta_target < 1.0))
      throw std::invalid_argument("ConcaveCardinality: beta must lie in (0,1)");
  }

  int dim() const { return d_; }
  double beta_target() const { return beta_; }
  double curvature_a() const { return a_; }
  double strict_margin() const { return -a_; }  // eps_{G'}

  double g(double x) const { return 0.5 * a_ * x * x + (1.0 - 0.5 * a_) * x; }
  double value(const Subset& s) const { return g(static_cast<double>(s.cardinality())); }

  ValueOracle oracle() const {
    return ValueOracle(d_, [inst = *this](const Subset& s) { return inst.value(s); });
  }

 private:
  int d_;
  double beta_;
  double a_;
};

/// The instance on which the solver guarantee is met with equality: F is
/// (alpha, 1)-weakly DR-modular, G is (1, beta)-weakly DR-modular, and every
/// chain started on the bad element sees only zero marginals. H is evaluated
/// in the factored form (alpha - 1/beta) |S| away from the bad element so
/// the optimal value matches the closed form bit for bit.
class TightnessInstance {
 public:
  TightnessInstance(int d, double alpha, double beta, int bad_element = 0)
      : d_(d), alpha_(alpha), beta_(beta), bad_(bad_element) {
    if (d < 2) throw std::invalid_argument("TightnessInstance: d must be >= 2");
    if (!(alpha > 0.0 && alpha <= 1.0) || !(beta > 0.0 && beta <= 1.0))
      throw std::invalid_argument("TightnessInstance: alpha, beta must lie in (0,1]");
    if (bad_element < 0 || bad_element >= d)
      throw std::invalid_argument("TightnessInstance: bad element out of range");
  }

  int dim() const { return d_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  int bad_element() const { return bad_; }

  double f_value(const Subset& s) const {
    const double card = static_cast<double>(s.cardinality());
    if (s.is_empty()) return 0.0;
    if (s.contains(bad_)) return card + static_cast<double>(d_) / beta_ - 1.0;
    return alpha_ * card;
  }

  double g_value(const Subset& s) const {
    const double card = static_cast<double>(s.cardinality());
    if (s.is_empty()) return 0.0;
    if (s.contains(bad_)) return card + static_cast<double>(d_) / beta_ - 1.0;
    return card / beta_;
  }

  double h_value(const Subset& s) const {
    if (s.contains(bad_)) return 0.0;
    return (alpha_ - 1.0 / beta_) * static_cast<double>(s.cardinality());
  }

  std::tuple<double, double, double> values(const Subset& s) const {
    return {f_value(s), g_value(s), h_value(s)};
  }

  double optimal_value() const { return (alpha_ - 1.0 / beta_) * static_cast<double>(d_ - 1); }
  Subset optimal_set() const { return Subset::universe(d_).without(bad_); }

  /// A start point whose largest coordinate is the bad element: the
  /// adversarial configuration that pins the solver at value zero.
  std::vector<double> adversarial_start() const {
    std::vector<double> s(static_cast<std::size_t>(d_), 0.5);
    s[static_cast<std::size_t>(bad_)] = 0.75;
    return s;
  }

  ValueOracle oracle() const {
    return ValueOracle(d_, [inst = *this](const Subset& s) { return inst.h_value(s); });
  }
  ValueOracle f_oracle() const {
    return ValueOracle(d_, [inst = *this](const Subset& s) { return inst.f_value(s); });
  }
  ValueOracle g_oracle() const {
    return ValueOracle(d_, [inst = *this](const Subset& s) { return inst.g_value(s); });
  }

 private:
  int d_;
  double alpha_, beta_;
  int bad_;
};

/// Query-hardness construction: value 0 on partition-balanced sets and a
/// small negative constant elsewhere, with the partition hidden behind the
/// oracle. Balance compares |S ∩ C| against |S ∩ D| with slack eps * d.
class HardnessInstance {
 public:
  HardnessInstance(int d, double eps, double alpha, double delta, std::uint64_t seed)
      : d_(d), eps_(eps), alpha_(alpha), delta_(delta), seed_(seed), c_mask_(Subset::empty(d)) {
    if (d <= 2 || d % 2 != 0) throw std::invalid_argument("HardnessInstance: d must be even, > 2");
    if (eps < 1.0 / d || eps >= 0.5)
      throw std::invalid_argument("HardnessInstance: eps must lie in [1/d, 1/2)");
    if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("HardnessInstance: bad alpha");
    if (delta <= 0.0) throw std::invalid_argument("HardnessInstance: delta must be positive");
    // eps*d compared on integers; snap away float fuzz on exact thresholds
    threshold_ = static_cast<int>(std::floor(eps * d + 1e-9));

    std::vector<int> ids(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) ids[static_cast<std::size_t>(i)] = i;
    for (int i = d - 1; i > 0; --i) {
      const int j = static_cast<int>(rng::counter_hash(seed, static_cast<std::uint64_t>(i)) %
                                     static_cast<std::uint64_t>(i + 1));
      std::swap(ids[static_cast<std::size_t>(i)], ids[static_cast<std::size_t>(j)]);
    }
    for (int k = 0; k < d / 2; ++k) c_mask_ = c_mask_.with(ids[static_cast<std::size_t>(k)]);
  }

  static double default_eps(int d) { return std::max(1.0 / d, 0.25); }

  int dim() const { return d_; }
  double eps() const { return eps_; }
  double alpha() const { return alpha_; }
  double delta() const { return delta_; }
  int balance_threshold() const { return threshold_; }
  const Subset& partition_c() const { return c_mask_; }
  Subset partition_d() const { return c_mask_.complement(); }

  double unbalanced_value() const { return 2.0 * alpha_ * delta_ / (2.0 - static_cast<double>(d_)); }

  double value(const Subset& s) const {
    const int k = s.intersect(c_mask_).cardinality();
    const int l = s.cardinality() - k;
    return std::abs(k - l) <= threshold_ ? 0.0 : unbalanced_value();
  }

  ValueOracle oracle() const {
    return ValueOracle(d_, [inst = *this](const Subset& s) { return inst.value(s); });
  }

  /// Exact probability that a uniform random subset is unbalanced
  /// (|S ∩ C| and |S ∩ D| are independent Binomial(d/2, 1/2) counts).
  double exact_unbalanced_probability() const {
    const int half = d_ / 2;
    std::vector<double> binom(static_cast<std::size_t>(half) + 1);
    double c = 1.0;
    for (int k = 0; k <= half; ++k) {
      binom[static_cast<std::size_t>(k)] = c * std::pow(0.5, half);
      c = c * (half - k) / (k + 1.0);
    }
    double p = 0.0;
    for (int k = 0; k <= half; ++k)
      for (int l = 0; l <= half; ++l)
        if (std::abs(k - l) > threshold_)
          p += binom[static_cast<std::size_t>(k)] * binom[static_cast<std::size_t>(l)];
    return p;
  }

 private:
  int d_;
  double eps_, alpha_, delta_;
  std::uint64_t seed_;
  Subset c_mask_;
  int threshold_ = 0;
};

/// Seeded integer-valued set function on 2^d, normalized to zero at the
/// empty set. Exact in floating point, which keeps decomposition round-trips
/// bitwise.
inline std::vector<double> random_integer_table(int d, int lo, int hi, std::uint64_t seed) {
  if (d > 20) throw std::invalid_argument("random_integer_table: d too large");
  std::vector<double> t(std::uint64_t{1} << d);
  for (std::uint64_t m = 1; m < t.size(); ++m)
    t[m] = static_cast<double>(
        lo + static_cast<int>(rng::counter_hash(seed, m) % static_cast<std::uint64_t>(hi - lo + 1)));
  t[0] = 0.0;
  return t;
}

}  // namespace subopt

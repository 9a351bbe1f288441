#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace subopt {

/// Index universe V = {0, ..., d-1}. Subsets are 64-bit masks, so d <= 64.
class GroundSet {
 public:
  explicit GroundSet(int d) : d_(d) {
    if (d < 1 || d > 64)
      throw std::invalid_argument("GroundSet: d must be in [1, 64], got " + std::to_string(d));
  }

  int dim() const { return d_; }
  std::uint64_t full_mask() const { return d_ == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << d_) - 1); }

 private:
  int d_;
};

/// A subset of a fixed ground set, stored as a bitmask. Carries the d it was
/// built against; bits at positions >= d are always zero.
class Subset {
 public:
  Subset() : bits_(0), d_(0) {}
  Subset(std::uint64_t bits, int d) : bits_(bits), d_(d) {
    if (d < 0 || d > 64) throw std::invalid_argument("Subset: bad dimension");
    if (d < 64 && (bits >> d) != 0)
      throw std::invalid_argument("Subset: mask has bits outside the ground set");
  }

  static Subset empty(int d) { return Subset(0, d); }
  static Subset universe(int d) { return Subset(GroundSet(d).full_mask(), d); }
  static Subset singleton(int i, int d) { return Subset(std::uint64_t{1} << i, d); }
  static Subset of(std::initializer_list<int> elems, int d) {
    std::uint64_t m = 0;
    for (int e : elems) m |= std::uint64_t{1} << e;
    return Subset(m, d);
  }

  std::uint64_t mask() const { return bits_; }
  int dim() const { return d_; }
  int cardinality() const { return std::popcount(bits_); }
  bool is_empty() const { return bits_ == 0; }

  bool contains(int i) const { return (bits_ >> i) & 1u; }
  Subset with(int i) const { return Subset(bits_ | (std::uint64_t{1} << i), d_); }
  Subset without(int i) const { return Subset(bits_ & ~(std::uint64_t{1} << i), d_); }
  Subset complement() const { return Subset(~bits_ & Subset::universe(d_).bits_, d_); }

  Subset union_with(const Subset& o) const { return Subset(bits_ | o.bits_, d_); }
  Subset intersect(const Subset& o) const { return Subset(bits_ & o.bits_, d_); }
  Subset minus(const Subset& o) const { return Subset(bits_ & ~o.bits_, d_); }
  bool subset_of(const Subset& o) const { return (bits_ & ~o.bits_) == 0; }

  std::vector<int> elements() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(cardinality()));
    for (std::uint64_t m = bits_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m));
    return out;
  }

  bool operator==(const Subset& o) const { return bits_ == o.bits_ && d_ == o.d_; }
  bool operator!=(const Subset& o) const { return !(*this == o); }

  std::string to_string() const {
    std::string s = "{";
    bool first = true;
    for (int e : elements()) {
      if (!first) s += ",";
      s += std::to_string(e);
      first = false;
    }
    return s + "}";
  }

 private:
  std::uint64_t bits_;
  int d_;
};

/// Tie-break used throughout: smaller cardinality first, then smaller mask.
inline bool tie_less(const Subset& a, const Subset& b) {
  if (a.cardinality() != b.cardinality()) return a.cardinality() < b.cardinality();
  return a.mask() < b.mask();
}

inline std::ostream& operator<<(std::ostream& os, const Subset& s) { return os << s.to_string(); }

/// Visits all 2^d subsets in mask order. F: void(const Subset&).
template <typename F>
void for_each_subset(int d, F&& f) {
  const std::uint64_t n = std::uint64_t{1} << d;
  for (std::uint64_t m = 0; m < n; ++m) f(Subset(m, d));
}

}  // namespace subopt

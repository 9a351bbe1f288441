#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "subopt/subset.hpp"

namespace subopt {

/// Dense symmetric matrix, packed lower triangle, row-major.
class SymmetricMatrix {
 public:
  explicit SymmetricMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * (n + 1) / 2, 0.0) {
    if (n < 1) throw std::invalid_argument("SymmetricMatrix: n must be positive");
  }

  static SymmetricMatrix identity(int n) {
    SymmetricMatrix m(n);
    for (int i = 0; i < n; ++i) m.set(i, i, 1.0);
    return m;
  }

  int size() const { return n_; }

  double operator()(int i, int j) const { return a_[index(i, j)]; }
  void set(int i, int j, double v) { a_[index(i, j)] = v; }

  double max_diagonal() const {
    double m = 0.0;
    for (int i = 0; i < n_; ++i) m = std::max(m, std::abs((*this)(i, i)));
    return m;
  }

  /// Principal submatrix indexed by the elements of s, in ascending order.
  SymmetricMatrix principal_submatrix(const Subset& s) const {
    const std::vector<int> idx = s.elements();
    SymmetricMatrix out(static_cast<int>(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j <= i; ++j)
        out.set(static_cast<int>(i), static_cast<int>(j), (*this)(idx[i], idx[j]));
    return out;
  }

 private:
  std::size_t index(int i, int j) const {
    if (i < 0 || j < 0 || i >= n_ || j >= n_) throw std::out_of_range("SymmetricMatrix index");
    if (j > i) std::swap(i, j);
    return static_cast<std::size_t>(i) * (i + 1) / 2 + j;
  }

  int n_;
  std::vector<double> a_;
};

struct NotPositiveDefiniteError : std::domain_error {
  explicit NotPositiveDefiniteError(int pivot)
      : std::domain_error("matrix not positive definite (pivot " + std::to_string(pivot) + ")"),
        pivot_index(pivot) {}
  int pivot_index;
};

/// Lower-triangular Cholesky factor with solve helpers.
class CholFactor {
 public:
  CholFactor() : n_(0) {}

  int size() const { return n_; }
  double entry(int i, int j) const { return l_[static_cast<std::size_t>(i) * (i + 1) / 2 + j]; }

  /// Solves L w = b in place.
  void solve_lower(std::vector<double>& b) const {
    for (int i = 0; i < n_; ++i) {
      double acc = b[static_cast<std::size_t>(i)];
      const std::size_t row = static_cast<std::size_t>(i) * (i + 1) / 2;
      for (int j = 0; j < i; ++j) acc -= l_[row + j] * b[static_cast<std::size_t>(j)];
      b[static_cast<std::size_t>(i)] = acc / l_[row + i];
    }
  }

  /// Solves L^T x = b in place.
  void solve_upper(std::vector<double>& b) const {
    for (int i = n_ - 1; i >= 0; --i) {
      double acc = b[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < n_; ++j)
        acc -= l_[static_cast<std::size_t>(j) * (j + 1) / 2 + i] * b[static_cast<std::size_t>(j)];
      b[static_cast<std::size_t>(i)] = acc / l_[static_cast<std::size_t>(i) * (i + 1) / 2 + i];
    }
  }

  /// Solves M x = b for the factored M.
  std::vector<double> solve(std::vector<double> b) const {
    solve_lower(b);
    solve_upper(b);
    return b;
  }

 private:
  friend CholFactor chol_factor(const SymmetricMatrix&);
  friend class CholChain;
  int n_;
  std::vector<double> l_;  // packed lower triangle
};

/// Cholesky factorization M = L L^T. The pivot must stay above
/// 1e-12 times the largest diagonal entry of M.
inline CholFactor chol_factor(const SymmetricMatrix& m) {
  const int n = m.size();
  const double tol = 1e-12 * std::max(m.max_diagonal(), 1e-300);
  CholFactor f;
  f.n_ = n;
  f.l_.assign(static_cast<std::size_t>(n) * (n + 1) / 2, 0.0);
  for (int i = 0; i < n; ++i) {
    const std::size_t row = static_cast<std::size_t>(i) * (i + 1) / 2;
    for (int j = 0; j <= i; ++j) {
      double acc = m(i, j);
      const std::size_t rj = static_cast<std::size_t>(j) * (j + 1) / 2;
      for (int k = 0; k < j; ++k) acc -= f.l_[row + k] * f.l_[rj + k];
      if (i == j) {
        if (acc <= tol) throw NotPositiveDefiniteError(i);
        f.l_[row + j] = std::sqrt(acc);
      } else {
        f.l_[row + j] = acc / f.l_[rj + j];
      }
    }
  }
  return f;
}

/// Grow-only Cholesky factor of a principal submatrix visited along a chain
/// of single-element extensions. Appending a row costs O(|S|^2); no downdates.
class CholChain {
 public:
  explicit CholChain(int ground_dim) : current_(Subset::empty(ground_dim)) {}

  const Subset& current_set() const { return current_; }
  const std::vector<int>& order() const { return order_; }
  int size() const { return factor_.n_; }
  const CholFactor& factor() const { return factor_; }

  /// Appends element i whose matrix row is `border` (entries against the
  /// current chain elements, in chain order) with diagonal entry `diag`.
  void extend(int i, std::vector<double> border, double diag) {
    if (current_.contains(i)) throw std::invalid_argument("CholChain::extend: element present");
    if (border.size() != static_cast<std::size_t>(factor_.n_))
      throw std::invalid_argument("CholChain::extend: border size mismatch");
    max_diag_ = std::max(max_diag_, std::abs(diag));
    factor_.solve_lower(border);  // w = L^{-1} b
    double schur = diag;
    for (double w : border) schur -= w * w;
    if (schur <= 1e-12 * std::max(max_diag_, 1e-300)) throw NotPositiveDefiniteError(factor_.n_);
    factor_.l_.insert(factor_.l_.end(), border.begin(), border.end());
    factor_.l_.push_back(std::sqrt(schur));
    factor_.n_ += 1;
    order_.push_back(i);
    current_ = current_.with(i);
  }

  void reset() {
    factor_ = CholFactor{};
    order_.clear();
    current_ = Subset::empty(current_.dim());
    max_diag_ = 0.0;
  }

 private:
  Subset current_;
  std::vector<int> order_;
  CholFactor factor_;
  double max_diag_ = 0.0;
};

/// Full eigensystem of a symmetric matrix by cyclic Jacobi sweeps; iterates
/// until the off-diagonal Frobenius norm drops below 1e-12 * ||M||_F.
struct EigenSystem {
  std::vector<double> values;                // ascending
  std::vector<std::vector<double>> vectors;  // vectors[k] is the k-th column
};

inline EigenSystem jacobi_eigensystem(const SymmetricMatrix& m, bool want_vectors = true) {
  const int n = m.size();
  if (n > 512) throw std::invalid_argument("jacobi_eigensystem: n > 512");
  std::vector<std::vector<double>> a(static_cast<std::size_t>(n),
                                     std::vector<double>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = m(i, j);
  std::vector<std::vector<double>> v;
  if (want_vectors) {
    v.assign(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (int i = 0; i < n; ++i) v[i][i] = 1.0;
  }

  double frob = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) frob += a[i][j] * a[i][j];
  const double target = 1e-12 * std::sqrt(frob);

  auto off_norm = [&]() {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) s += a[i][j] * a[i][j];
    return std::sqrt(2.0 * s);
  };

  for (int sweep = 0; sweep < 100 && off_norm() > target; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a[p][q];
        if (apq == 0.0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        if (want_vectors) {
          for (int k = 0; k < n; ++k) {
            const double vkp = v[k][p], vkq = v[k][q];
            v[k][p] = c * vkp - s * vkq;
            v[k][q] = s * vkp + c * vkq;
          }
        }
      }
    }
  }

  EigenSystem out;
  out.values.resize(static_cast<std::size_t>(n));
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  std::sort(perm.begin(), perm.end(), [&](int x, int y) { return a[x][x] < a[y][y]; });
  for (int k = 0; k < n; ++k) out.values[static_cast<std::size_t>(k)] = a[perm[k]][perm[k]];
  if (want_vectors) {
    out.vectors.assign(static_cast<std::size_t>(n),
                       std::vector<double>(static_cast<std::size_t>(n)));
    for (int k = 0; k < n; ++k)
      for (int r = 0; r < n; ++r) out.vectors[static_cast<std::size_t>(k)][r] = v[r][perm[k]];
  }
  return out;
}

/// Smallest and largest eigenvalue of a symmetric matrix.
inline std::pair<double, double> eigen_extremes(const SymmetricMatrix& m) {
  const EigenSystem es = jacobi_eigensystem(m, /*want_vectors=*/false);
  return {es.values.front(), es.values.back()};
}

}  // namespace subopt

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "pcmatrix.hpp"

namespace pairwise {

enum class Normalization { None, SumToOne, MaxToOne };

struct WeightVector {
  std::vector<Scalar> values;
  Normalization normalization = Normalization::None;

  std::size_t size() const noexcept { return values.size(); }

  bool all_real() const {
    return std::all_of(values.begin(), values.end(), [](const Scalar& v) { return v.is_real(); });
  }
  bool all_positive_real() const {
    return std::all_of(values.begin(), values.end(), [](const Scalar& v) { return v.is_real() && v.re() > 0.0; });
  }
};

/// Rescales real weights. Complex vectors are left untouched.
inline WeightVector normalized(WeightVector w, Normalization how) {
  if (how == Normalization::None || !w.all_real() || w.values.empty()) return w;
  double scale = 0.0;
  if (how == Normalization::SumToOne) {
    for (const Scalar& v : w.values) scale += v.re();
  } else {
    scale = w.values.front().re();
    for (const Scalar& v : w.values) scale = std::max(scale, v.re());
  }
  if (scale == 0.0) throw Error(Errc::ZeroWeight, "cannot normalize weights that sum to zero");
  for (Scalar& v : w.values) v = Scalar(v.re() / scale);
  w.normalization = how;
  return w;
}

namespace detail {

inline void require_multiplicative(const PcMatrix& m) {
  if (!m.group().multiplicative()) {
    throw Error(Errc::UndefinedForGroup, "weights need a multiplicative group, got " + m.group().name());
  }
}

}  // namespace detail

/// Real-branch geometric means of the rows. Negative row products take
/// -|p|^(1/n), which requires n odd. Strict matrices come back SumToOne.
inline WeightVector geometric_mean_weights(const PcMatrix& m) {
  detail::require_multiplicative(m);
  const std::size_t n = m.n();
  WeightVector w;
  w.values.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    double log_sum = 0.0;
    bool negative = false;
    for (std::size_t j = 0; j < n; ++j) {
      const Scalar& entry = m.at(i, j);
      if (!entry.is_real()) {
        throw Error(Errc::ComplexEntries, "complex entries have no real geometric mean; use gm_branch_vectors");
      }
      log_sum += std::log(std::abs(entry.re()));
      negative ^= entry.re() < 0.0;
    }
    if (negative && n % 2 == 0) {
      throw Error(Errc::NoRealRoot, "row " + std::to_string(i) +
                                         " has a negative product and even n; use gm_branch_vectors");
    }
    const double magnitude = std::exp(log_sum / static_cast<double>(n));
    w.values.emplace_back(negative ? -magnitude : magnitude);
  }
  return m.mode() == Mode::Strict ? normalized(std::move(w), Normalization::SumToOne) : w;
}

/// Every n-th root of every row product, plus the full cross product of
/// per-row choices.
struct BranchSet {
  std::vector<Scalar> row_products;
  std::vector<std::vector<Scalar>> per_row_roots;
  std::vector<std::vector<Scalar>> vectors;  // lexicographic over per-row root indices
};

inline BranchSet gm_branch_vectors(const PcMatrix& m, double dedup_tol = 1e-9) {
  detail::require_multiplicative(m);
  const std::size_t n = m.n();
  BranchSet set;
  for (std::size_t i = 0; i < n; ++i) {
    Scalar product = m.at(i, 0);
    for (std::size_t j = 1; j < n; ++j) product = product * m.at(i, j);
    set.row_products.push_back(product);

    std::vector<Scalar> unique;
    for (const Scalar& r : nth_roots(product, static_cast<int>(n))) {
      const bool seen = std::any_of(unique.begin(), unique.end(),
                                    [&](const Scalar& u) { return near_abs(u, r, dedup_tol); });
      if (!seen) unique.push_back(r);
    }
    set.per_row_roots.push_back(std::move(unique));
  }

  std::size_t total = 1;
  for (const auto& roots : set.per_row_roots) total *= roots.size();
  set.vectors.reserve(total);
  std::vector<std::size_t> index(n, 0);
  for (std::size_t count = 0; count < total; ++count) {
    std::vector<Scalar> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = set.per_row_roots[i][index[i]];
    set.vectors.push_back(std::move(v));
    for (std::size_t pos = n; pos-- > 0;) {
      if (++index[pos] < set.per_row_roots[pos].size()) break;
      index[pos] = 0;
    }
  }
  return set;
}

struct EigenWeights {
  WeightVector weights;
  double eigenvalue = 0.0;
  int iterations = 0;
};

/// Perron vector by power iteration from the all-ones vector. Iterates are
/// kept sum-normalized; the eigenvalue is the Rayleigh quotient.
inline EigenWeights eigen_weights(const PcMatrix& m, double tol = 1e-12, int max_iter = 10000) {
  if (!m.all_positive_real()) throw Error(Errc::NotPositive, "power iteration needs a positive matrix");
  const std::size_t n = m.n();
  std::vector<double> v(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n);
  auto multiply = [&](const std::vector<double>& in, std::vector<double>& out) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += m.at(i, j).re() * in[j];
      out[i] = s;
    }
  };

  for (int iter = 1; iter <= max_iter; ++iter) {
    multiply(v, next);
    const double total = std::accumulate(next.begin(), next.end(), 0.0);
    double diff = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      next[i] /= total;
      diff = std::max(diff, std::abs(next[i] - v[i]));
    }
    v.swap(next);
    if (diff < tol) {
      multiply(v, next);
      double num = 0.0;
      double den = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        num += v[i] * next[i];
        den += v[i] * v[i];
      }
      EigenWeights out;
      out.weights.normalization = Normalization::SumToOne;
      for (double x : v) out.weights.values.emplace_back(x);
      out.eigenvalue = num / den;
      out.iterations = iter;
      return out;
    }
  }
  throw Error(Errc::NoConvergence, "power iteration did not converge in " + std::to_string(max_iter) + " steps");
}

/// Dense row-major real matrix, just enough for the symmetric eigensolver.
class RealMatrix {
 public:
  RealMatrix() = default;
  explicit RealMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}
  RealMatrix(std::initializer_list<std::initializer_list<double>> rows) : RealMatrix(rows.size()) {
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != n_) throw Error(Errc::BadShape, "matrix is not square");
      std::copy(row.begin(), row.end(), data_.begin() + static_cast<std::ptrdiff_t>(i * n_));
      ++i;
    }
  }

  static RealMatrix identity(std::size_t n) {
    RealMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  /// Real parts of a PC matrix; throws ComplexEntries for complex input.
  static RealMatrix from(const PcMatrix& pc) {
    RealMatrix m(pc.n());
    for (std::size_t i = 0; i < pc.n(); ++i) {
      for (std::size_t j = 0; j < pc.n(); ++j) {
        if (!pc.at(i, j).is_real()) throw Error(Errc::ComplexEntries, "matrix has complex entries");
        m(i, j) = pc.at(i, j).re();
      }
    }
    return m;
  }

  std::size_t n() const noexcept { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

struct SymmetricEigen {
  std::vector<double> values;                // descending
  std::vector<std::vector<double>> vectors;  // vectors[k] pairs with values[k]
  int sweeps = 0;
};

/// Cyclic Jacobi diagonalization of a real symmetric matrix (n <= 16).
/// Each eigenvector has unit norm and its first nonzero coordinate positive.
inline SymmetricEigen eigen_full_symmetric(const RealMatrix& input, double tol = 1e-12) {
  const std::size_t n = input.n();
  if (n == 0 || n > 16) throw Error(Errc::BadShape, "symmetric eigensolver supports 1 <= n <= 16");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(input(i, j) - input(j, i)) > 1e-12) {
        throw Error(Errc::NotSymmetric, "matrix is not symmetric");
      }
    }
  }

  RealMatrix a = input;
  RealMatrix v = RealMatrix::identity(n);
  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j) s += a(i, j) * a(i, j);
      }
    }
    return std::sqrt(s);
  };

  constexpr int kMaxSweeps = 100;
  int sweeps = 0;
  while (off_norm() >= tol) {
    if (++sweeps > kMaxSweeps) throw Error(Errc::NoConvergence, "Jacobi sweeps exhausted");
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a(p, q) == 0.0) continue;
        // Rotation angle zeroing a(p,q); t is the smaller root of t^2 + 2 theta t - 1 = 0.
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });

  SymmetricEigen out;
  out.sweeps = sweeps;
  for (std::size_t col : order) {
    out.values.push_back(a(col, col));
    std::vector<double> vec(n);
    for (std::size_t k = 0; k < n; ++k) vec[k] = v(k, col);
    const auto first = std::find_if(vec.begin(), vec.end(), [](double x) { return std::abs(x) > 1e-12; });
    if (first != vec.end() && *first < 0.0) {
      for (double& x : vec) x = -x;
    }
    out.vectors.push_back(std::move(vec));
  }
  return out;
}

/// The consistent matrix m_ij = v_i / v_j. The carrier is the smallest
/// catalog group holding the weights; only positive weights give a Strict
/// matrix.
inline PcMatrix reconstruct(const WeightVector& w, std::vector<std::string> labels = {}) {
  const std::size_t n = w.size();
  for (const Scalar& v : w.values) {
    if (v.is_zero()) throw Error(Errc::ZeroWeight, "weights must be nonzero");
  }
  GroupDescriptor group = GroupDescriptor::nonzero_complex();
  Mode mode = Mode::Research;
  if (w.all_positive_real()) {
    group = GroupDescriptor::positive_reals();
    mode = Mode::Strict;
  } else if (w.all_real()) {
    group = GroupDescriptor::nonzero_reals();
  }
  PcMatrix::Rows rows(n, std::vector<Scalar>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      rows[i][j] = i == j ? group.identity() : w.values[i] / w.values[j];
    }
  }
  return PcMatrix::from_entries(rows, group, mode, std::move(labels));
}

struct RankedEntity {
  std::string label;
  double weight = 0.0;
};

/// Descending by weight; equal weights keep their label order. Refused for
/// anything but positive real weights.
inline std::vector<RankedEntity> rank_entities(const WeightVector& w, const std::vector<std::string>& labels) {
  if (labels.size() != w.size()) throw Error(Errc::BadShape, "one label per weight is required");
  if (!w.all_real()) throw Error(Errc::NotOrderable, "complex weights admit no natural linear order");
  if (!w.all_positive_real()) throw Error(Errc::NotOrderable, "ranking is defined for positive weights only");
  std::vector<RankedEntity> out;
  for (std::size_t i = 0; i < w.size(); ++i) out.push_back({labels[i], w.values[i].re()});
  std::stable_sort(out.begin(), out.end(),
                   [](const RankedEntity& a, const RankedEntity& b) { return a.weight > b.weight; });
  return out;
}

}  // namespace pairwise

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pcmatrix.hpp"

namespace pairwise {

/// Absolute tolerance for additive identities (entries near 0 matter).
inline constexpr double kAdditiveTolerance = 1e-9;

/// Where an additive matrix came from and which entries sat on the branch
/// cut of the logarithm (negative reals, mapped to Arg = +pi).
struct Provenance {
  std::string source;
  std::string branch = "principal";
  std::vector<std::pair<std::size_t, std::size_t>> branch_cut_entries;
};

/// Matrix of differences a_ij with zero diagonal. Additive reciprocity is
/// checked rather than assumed, since the logarithm may break it.
class AdditiveMatrix {
 public:
  using Rows = std::vector<std::vector<Scalar>>;

  explicit AdditiveMatrix(Rows rows, std::optional<Provenance> provenance = std::nullopt)
      : rows_(std::move(rows)), provenance_(std::move(provenance)) {
    for (const auto& row : rows_) {
      if (row.size() != rows_.size()) throw Error(Errc::BadShape, "matrix is not square");
    }
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (!near_abs(rows_[i][i], Scalar(0.0), kAdditiveTolerance)) {
        throw Error(Errc::DiagonalNotIdentity, "additive diagonal must be 0");
      }
    }
  }

  std::size_t n() const noexcept { return rows_.size(); }
  const Scalar& at(std::size_t i, std::size_t j) const { return rows_.at(i).at(j); }
  const Rows& rows() const noexcept { return rows_; }
  const std::optional<Provenance>& provenance() const noexcept { return provenance_; }

 private:
  Rows rows_;
  std::optional<Provenance> provenance_;
};

/// Entrywise principal logarithm; the diagonal is exactly 0.
inline AdditiveMatrix log_map(const PcMatrix& m, std::string source = {}) {
  if (!m.group().multiplicative()) {
    throw Error(Errc::UndefinedForGroup, "log_map expects a multiplicative matrix");
  }
  const std::size_t n = m.n();
  Provenance provenance{std::move(source), "principal", {}};
  AdditiveMatrix::Rows rows(n, std::vector<Scalar>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const Scalar& entry = m.at(i, j);
      if (entry.is_zero()) throw Error(Errc::ZeroEntry, "logarithm of a zero entry");
      if (entry.is_real() && entry.re() < 0.0) provenance.branch_cut_entries.emplace_back(i, j);
      rows[i][j] = principal_log(entry);
    }
  }
  return AdditiveMatrix(std::move(rows), std::move(provenance));
}

/// Entrywise exponential, validated as a PC matrix over `group`. A
/// validation failure is a finding, so it propagates unchanged.
inline PcMatrix exp_map(const AdditiveMatrix& a, const GroupDescriptor& group, Mode mode = Mode::Strict,
                        std::vector<std::string> labels = {}) {
  const std::size_t n = a.n();
  PcMatrix::Rows rows(n, std::vector<Scalar>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = exponential(a.at(i, j));
  }
  return PcMatrix::from_entries(rows, group, mode, std::move(labels));
}

/// a_ik + a_kj = a_ij for every index triple.
inline bool additive_is_consistent(const AdditiveMatrix& a, double tol = kAdditiveTolerance) {
  const std::size_t n = a.n();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t j = 0; j < n; ++j) {
        if (!near_abs(a.at(i, k) + a.at(k, j), a.at(i, j), tol)) return false;
      }
    }
  }
  return true;
}

inline bool additive_is_reciprocal(const AdditiveMatrix& a, double tol = kAdditiveTolerance) {
  const std::size_t n = a.n();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!near_abs(a.at(j, i), -a.at(i, j), tol)) return false;
    }
  }
  return true;
}

}  // namespace pairwise

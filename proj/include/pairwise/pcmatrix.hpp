#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "scalar.hpp"

namespace pairwise {

/// Relative tolerance for x.z = y on a triad and for reciprocity checks.
inline constexpr double kConsistencyTolerance = 1e-9;

/// Strict admits only positive reals; Research admits any catalog group and
/// has to be asked for explicitly.
enum class Mode { Strict, Research };

inline std::string_view to_string(Mode mode) { return mode == Mode::Strict ? "strict" : "research"; }

inline Mode parse_mode(std::string_view text) {
  if (text == "strict") return Mode::Strict;
  if (text == "research") return Mode::Research;
  throw Error(Errc::ParseError, "mode must be \"strict\" or \"research\"");
}

/// A single elicited ratio: entity i compared to entity j.
struct Judgment {
  std::size_t i = 0;
  std::size_t j = 0;
  Scalar value;
};

/// Group-aware closeness: relative for multiplicative groups, absolute for
/// the additive one (whose identity is 0).
inline bool group_near(const GroupDescriptor& g, const Scalar& a, const Scalar& b, double tol) {
  return g.multiplicative() ? near_rel(a, b, tol) : near_abs(a, b, tol);
}

/// Square reciprocal matrix of ratios with identity diagonal. Instances only
/// exist in validated form.
class PcMatrix {
 public:
  using Rows = std::vector<std::vector<Scalar>>;

  static PcMatrix from_entries(const Rows& rows, const GroupDescriptor& group, Mode mode = Mode::Strict,
                               std::vector<std::string> labels = {}) {
    const std::size_t n = rows.size();
    if (n < 2) throw Error(Errc::BadShape, "a PC matrix needs at least 2 entities");
    for (const auto& row : rows) {
      if (row.size() != n) throw Error(Errc::BadShape, "matrix is not square");
    }
    if (!labels.empty()) {
      if (labels.size() != n) throw Error(Errc::BadShape, "label count does not match n");
      if (std::set<std::string>(labels.begin(), labels.end()).size() != n) {
        throw Error(Errc::DuplicateLabels, "entity labels must be distinct");
      }
    }
    if (mode == Mode::Strict) {
      for (const auto& row : rows) {
        for (const Scalar& entry : row) {
          if (!entry.is_real() || entry.re() <= 0.0) {
            throw Error(Errc::StrictModeViolation,
                        "strict mode admits only positive reals, got " + format_scalar(entry));
          }
        }
      }
      if (group.kind() != GroupKind::PositiveReals) {
        throw Error(Errc::StrictModeViolation, "strict mode requires PositiveReals, got " + group.name());
      }
    }
    for (const auto& row : rows) {
      for (const Scalar& entry : row) {
        if (!group.contains(entry)) {
          throw Error(Errc::NonMember, format_scalar(entry) + " is not a member of " + group.name());
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!group_near(group, rows[i][i], group.identity(), kConsistencyTolerance)) {
        throw Error(Errc::DiagonalNotIdentity,
                    "entry (" + std::to_string(i) + "," + std::to_string(i) + ") = " + format_scalar(rows[i][i]));
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!group_near(group, rows[j][i], group.inverse(rows[i][j]), kConsistencyTolerance)) {
          throw Error(Errc::ReciprocityViolation,
                      "entries (" + std::to_string(i) + "," + std::to_string(j) + ") and (" + std::to_string(j) +
                          "," + std::to_string(i) + ") are not mutually inverse");
        }
      }
    }
    return PcMatrix(rows, group, mode, std::move(labels));
  }

  std::size_t n() const noexcept { return rows_.size(); }
  const Scalar& at(std::size_t i, std::size_t j) const { return rows_.at(i).at(j); }
  const Rows& rows() const noexcept { return rows_; }
  const GroupDescriptor& group() const noexcept { return group_; }
  Mode mode() const noexcept { return mode_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  /// Labels if present, otherwise "E1".."En".
  std::string label(std::size_t i) const {
    return labels_.empty() ? "E" + std::to_string(i + 1) : labels_.at(i);
  }

  bool all_positive_real() const {
    for (const auto& row : rows_) {
      for (const Scalar& v : row) {
        if (!v.is_real() || v.re() <= 0.0) return false;
      }
    }
    return true;
  }

 private:
  PcMatrix(Rows rows, GroupDescriptor group, Mode mode, std::vector<std::string> labels)
      : rows_(std::move(rows)), group_(group), mode_(mode), labels_(std::move(labels)) {}

  Rows rows_;
  GroupDescriptor group_;
  Mode mode_;
  std::vector<std::string> labels_;
};

/// Comparison cycle over entities i < k < j carrying (m_ik, m_ij, m_kj).
struct Triad {
  std::size_t i = 0;
  std::size_t k = 0;
  std::size_t j = 0;
  Scalar x;
  Scalar y;
  Scalar z;
};

inline bool triad_consistent(const GroupDescriptor& g, const Triad& t, double tol = kConsistencyTolerance) {
  return group_near(g, g.op(t.x, t.z), t.y, tol);
}

/// All C(n,3) triads in lexicographic (i, k, j) order; empty when n < 3.
inline std::vector<Triad> triads(const PcMatrix& m) {
  std::vector<Triad> out;
  const std::size_t n = m.n();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = i + 1; k < n; ++k) {
      for (std::size_t j = k + 1; j < n; ++j) {
        out.push_back(Triad{i, k, j, m.at(i, k), m.at(i, j), m.at(k, j)});
      }
    }
  }
  return out;
}

/// Reciprocity makes the i < k < j triads sufficient for the full
/// m_ik . m_kj = m_ij condition over all index triples.
inline bool is_consistent(const PcMatrix& m, double tol = kConsistencyTolerance) {
  for (const Triad& t : triads(m)) {
    if (!triad_consistent(m.group(), t, tol)) return false;
  }
  return true;
}

/// min(|1 - y/(xz)|, |1 - xz/y|) for a positive triad.
inline double local_inconsistency(double x, double y, double z) {
  const double xz = x * z;
  return std::min(std::abs(1.0 - y / xz), std::abs(1.0 - xz / y));
}

struct InconsistencyReport {
  double kii = 0.0;
  std::optional<Triad> worst_triad;  // absent only for n = 2
  std::vector<std::pair<Triad, double>> per_triad;

  bool consistent(double tol = kConsistencyTolerance) const { return kii <= tol; }
};

/// Triad-based inconsistency indicator: the worst local indicator over all
/// triads. Defined for positive real matrices only.
inline InconsistencyReport kii(const PcMatrix& m) {
  if (!m.all_positive_real()) {
    throw Error(Errc::UndefinedForGroup, "inconsistency indicator is defined over positive reals only");
  }
  InconsistencyReport report;
  for (const Triad& t : triads(m)) {
    const double local = local_inconsistency(t.x.re(), t.y.re(), t.z.re());
    report.per_triad.emplace_back(t, local);
    if (!report.worst_triad || local > report.kii) {
      report.kii = local;
      report.worst_triad = t;
    }
  }
  return report;
}

/// Partially filled matrix: nullopt where no judgment path connects a pair.
using PartialMatrix = std::vector<std::vector<std::optional<Scalar>>>;

namespace detail {

inline void check_judgment_indices(std::size_t n, const std::vector<Judgment>& judgments) {
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const Judgment& jd : judgments) {
    if (jd.i >= n || jd.j >= n) throw Error(Errc::IndexOutOfRange, "judgment index out of range");
    if (jd.i == jd.j) throw Error(Errc::SelfComparison, "judgment compares an entity with itself");
    if (!seen.insert(std::minmax(jd.i, jd.j)).second) {
      throw Error(Errc::DuplicateEdge,
                  "pair (" + std::to_string(jd.i) + "," + std::to_string(jd.j) + ") judged twice");
    }
  }
}

}  // namespace detail

/// Fills every pair reachable in the judgment graph with the product of
/// judgments along the shortest path, lexicographically smallest on ties.
/// Directly judged pairs are their own shortest path. Only i < j is walked;
/// the lower triangle is the exact group inverse so the result is reciprocal.
inline PartialMatrix shortest_path_completion(std::size_t n, const std::vector<Judgment>& judgments,
                                              const GroupDescriptor& group = GroupDescriptor::positive_reals()) {
  detail::check_judgment_indices(n, judgments);
  // adjacency[u] maps neighbour w to m_uw; std::map keeps neighbours sorted.
  std::vector<std::map<std::size_t, Scalar>> adjacency(n);
  for (const Judgment& jd : judgments) {
    adjacency[jd.i].emplace(jd.j, jd.value);
    adjacency[jd.j].emplace(jd.i, group.inverse(jd.value));
  }

  PartialMatrix out(n, std::vector<std::optional<Scalar>>(n));
  for (std::size_t source = 0; source < n; ++source) {
    out[source][source] = group.identity();
    std::vector<std::optional<Scalar>> acc(n);
    acc[source] = group.identity();
    std::queue<std::size_t> frontier;
    frontier.push(source);
    while (!frontier.empty()) {
      const std::size_t u = frontier.front();
      frontier.pop();
      for (const auto& [w, value] : adjacency[u]) {
        if (acc[w]) continue;
        acc[w] = group.op(*acc[u], value);
        frontier.push(w);
      }
    }
    for (std::size_t target = source + 1; target < n; ++target) {
      if (!acc[target]) continue;
      out[source][target] = acc[target];
      out[target][source] = group.inverse(*acc[target]);
    }
  }
  return out;
}

/// Number of connected components of the judgment graph.
inline std::size_t judgment_components(std::size_t n, const std::vector<Judgment>& judgments) {
  std::vector<std::size_t> parent(n);
  for (std::size_t v = 0; v < n; ++v) parent[v] = v;
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  std::size_t components = n;
  for (const Judgment& jd : judgments) {
    const std::size_t a = find(jd.i);
    const std::size_t b = find(jd.j);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components;
}

/// The unique consistent reciprocal matrix determined by a spanning tree of
/// n - 1 judgments.
inline PcMatrix complete_from_tree(std::size_t n, const std::vector<Judgment>& judgments,
                                   const GroupDescriptor& group = GroupDescriptor::positive_reals(),
                                   Mode mode = Mode::Strict, std::vector<std::string> labels = {}) {
  if (n < 2) throw Error(Errc::BadShape, "a PC matrix needs at least 2 entities");
  detail::check_judgment_indices(n, judgments);
  if (judgments.size() != n - 1) {
    throw Error(Errc::NotATree, "a spanning tree over " + std::to_string(n) + " entities has " +
                                    std::to_string(n - 1) + " judgments, got " + std::to_string(judgments.size()));
  }
  if (judgment_components(n, judgments) != 1) {
    throw Error(Errc::NotATree, "judgments contain a cycle and leave entities disconnected");
  }
  for (const Judgment& jd : judgments) {
    if (mode == Mode::Strict && !(jd.value.is_real() && jd.value.re() > 0.0)) {
      throw Error(Errc::StrictModeViolation, "strict mode admits only positive judgments");
    }
    if (!group.contains(jd.value)) {
      throw Error(Errc::NonMember, format_scalar(jd.value) + " is not a member of " + group.name());
    }
  }
  const PartialMatrix partial = shortest_path_completion(n, judgments, group);
  PcMatrix::Rows rows(n, std::vector<Scalar>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = *partial[i][j];
  }
  return PcMatrix::from_entries(rows, group, mode, std::move(labels));
}

/// Judgments beyond the n - 1 a spanning tree needs.
inline std::size_t superfluous_count(std::size_t n, std::size_t judgment_count) {
  const std::size_t tree = n == 0 ? 0 : n - 1;
  return judgment_count > tree ? judgment_count - tree : 0;
}

inline std::size_t superfluous_count(std::size_t n, const std::vector<Judgment>& judgments) {
  return superfluous_count(n, judgments.size());
}

}  // namespace pairwise

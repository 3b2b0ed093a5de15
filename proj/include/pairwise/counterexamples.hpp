#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

#include "algebra.hpp"
#include "io.hpp"
#include "pcmatrix.hpp"
#include "solvers.hpp"
#include "transform.hpp"

namespace pairwise {

/// One named assertion. Claim checks hold a stated claim against what
/// the modules compute and are allowed to fail.
struct Finding {
  std::string name;
  std::string expected;
  std::string computed;
  bool pass = false;
  bool claim_check = false;
  std::string note;
};

struct FindingsReport {
  std::string fixture;
  std::vector<Finding> findings;

  /// True when every finding other than the claim checks passes.
  bool overall() const {
    for (const Finding& f : findings) {
      if (!f.pass && !f.claim_check) return false;
    }
    return true;
  }
};

struct Fixture {
  std::string name;
  std::variant<PcMatrix, AdditiveMatrix> matrix;
  std::vector<std::string> expected_findings;
};

inline const std::array<std::string_view, 5>& fixture_names() {
  static const std::array<std::string_view, 5> names{"M1", "M2", "M3", "M4_additive", "EXAM"};
  return names;
}

namespace fixtures {

inline const std::vector<std::string>& exam_labels() {
  static const std::vector<std::string> labels{"A", "B", "C", "D"};
  return labels;
}

inline PcMatrix m1() {
  return PcMatrix::from_entries({{1, -1, 1}, {-1, 1, -1}, {1, -1, 1}}, GroupDescriptor::nonzero_reals(),
                                Mode::Research, {"A", "B", "C"});
}

inline PcMatrix m2() {
  const Scalar i(0.0, 1.0);
  return PcMatrix::from_entries({{1, i, 1}, {-i, 1, -i}, {1, i, 1}}, GroupDescriptor::nonzero_complex(),
                                Mode::Research, {"A", "B", "C"});
}

inline PcMatrix m3() {
  return PcMatrix::from_entries({{1, -1, -1, -1}, {-1, 1, 1, 1}, {-1, 1, 1, 1}, {-1, 1, 1, 1}},
                                GroupDescriptor::nonzero_complex(), Mode::Research, exam_labels());
}

/// Printed additive image of M1.
inline AdditiveMatrix m4_additive() {
  const Scalar ipi(0.0, std::numbers::pi);
  return AdditiveMatrix({{0, ipi, 0}, {ipi, 0, ipi}, {0, ipi, 0}}, Provenance{"M1", "principal", {}});
}

/// Printed additive image of M2.
inline AdditiveMatrix a4_additive() {
  const Scalar half(0.0, std::numbers::pi / 2.0);
  return AdditiveMatrix({{0, half, 0}, {-half, 0, -half}, {0, half, 0}}, Provenance{"M2", "principal", {}});
}

inline WeightVector exam_weights() { return WeightVector{{30, 20, 10, 40}, Normalization::None}; }

inline PcMatrix exam() { return reconstruct(exam_weights(), exam_labels()); }

}  // namespace fixtures

namespace detail {

inline std::string fmt(const Scalar& z) { return format_scalar(z, kDisplayDigits); }

inline std::string fmt(const std::vector<Scalar>& v, char open = '[', char close = ']') {
  std::string out(1, open);
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) out += ", ";
    out += fmt(v[k]);
  }
  return out + close;
}

inline std::string fmt(const std::vector<double>& v) {
  std::vector<Scalar> s(v.begin(), v.end());
  return fmt(s);
}

inline std::string fmt(bool b) { return b ? "true" : "false"; }

/// Same elements within tol, ignoring order.
inline bool same_set(const std::vector<Scalar>& a, const std::vector<Scalar>& b, double tol) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (const Scalar& x : a) {
    bool matched = false;
    for (std::size_t k = 0; k < b.size() && !matched; ++k) {
      if (!used[k] && near_abs(x, b[k], tol)) used[k] = matched = true;
    }
    if (!matched) return false;
  }
  return true;
}

inline bool same_matrix(const std::vector<std::vector<Scalar>>& a, const std::vector<std::vector<Scalar>>& b,
                        double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b[i].size()) return false;
    for (std::size_t j = 0; j < a[i].size(); ++j) {
      if (!near_abs(a[i][j], b[i][j], tol)) return false;
    }
  }
  return true;
}

/// Runs fn and reports the error code it throws, or "no error".
inline std::string error_code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return std::string(to_string(e.code()));
  }
  return "no error";
}

struct Check {
  std::string name;
  std::string expected;
  bool claim_check = false;
  // Returns (computed, pass, note).
  std::function<std::tuple<std::string, bool, std::string>()> run;
};

inline Check equals(std::string name, std::string expected, std::function<std::string()> compute) {
  std::string want = expected;
  return {std::move(name), std::move(expected), false,
          [want, compute = std::move(compute)]() -> std::tuple<std::string, bool, std::string> {
            std::string got = compute();
            return {got, got == want, ""};
          }};
}

inline Check predicate(std::string name, std::string expected, std::function<std::pair<std::string, bool>()> compute) {
  return {std::move(name), std::move(expected), false,
          [compute = std::move(compute)]() -> std::tuple<std::string, bool, std::string> {
            auto [got, ok] = compute();
            return {got, ok, ""};
          }};
}

inline std::vector<Scalar> sqrt2_over_2_set() {
  const double h = std::numbers::sqrt2 / 2.0;
  return {Scalar(h, h), Scalar(-h, h), Scalar(-h, -h), Scalar(h, -h)};
}

inline std::vector<Check> m1_checks() {
  return {
      equals("validates_nonzero_reals_research", "accepted", [] {
        fixtures::m1();
        return std::string("accepted");
      }),
      equals("strict_mode_rejects", "StrictModeViolation", [] {
        return error_code_of([] {
          PcMatrix::from_entries(fixtures::m1().rows(), GroupDescriptor::positive_reals(), Mode::Strict);
        });
      }),
      equals("consistent", "true", [] { return fmt(is_consistent(fixtures::m1())); }),
      equals("oriented_triads_of_form_(-1,1,-1)", "2", [] {
        const PcMatrix m = fixtures::m1();
        int count = 0;
        for (std::size_t i = 0; i < m.n(); ++i) {
          for (std::size_t k = 0; k < m.n(); ++k) {
            for (std::size_t j = 0; j < m.n(); ++j) {
              if (i == k || k == j || i == j) continue;
              if (m.at(i, k) == Scalar(-1) && m.at(i, j) == Scalar(1) && m.at(k, j) == Scalar(-1)) ++count;
            }
          }
        }
        return std::to_string(count);
      }),
      predicate("entries_lie_in_group_{1,-1}", "{1, -1}", [] {
        const GroupDescriptor c2 = GroupDescriptor::cyclic_roots_of_unity(2);
        const PcMatrix m = fixtures::m1();
        bool all = true;
        for (const auto& row : m.rows()) {
          for (const Scalar& v : row) all = all && c2.contains(v);
        }
        const auto carrier = c2.carrier();
        return std::pair{fmt(carrier, '{', '}'), all && same_set(carrier, {Scalar(1), Scalar(-1)}, 0.0)};
      }),
      equals("gm_weights", "[-1, 1, -1]", [] { return fmt(geometric_mean_weights(fixtures::m1()).values); }),
      predicate("reconstruct_gm_weights_is_M1", "true", [] {
        const PcMatrix back = reconstruct(geometric_mean_weights(fixtures::m1()));
        const bool same = same_matrix(back.rows(), fixtures::m1().rows(), 0.0);
        return std::pair{fmt(same), same};
      }),
      equals("ranking_refused", "NotOrderable", [] {
        return error_code_of([] { rank_entities(geometric_mean_weights(fixtures::m1()), {"A", "B", "C"}); });
      }),
      equals("carrier_orderability", "not orderable, witness -1 of order 2", [] {
        const auto verdict = check_orderability(GroupDescriptor::nonzero_reals());
        if (verdict.orderable || !verdict.witness) return std::string("orderable");
        return "not orderable, witness " + fmt(verdict.witness->element) + " of order " +
               std::to_string(verdict.witness->order);
      }),
      equals("order_axiom_counterexample", "(-2, -1, -1)", [] {
        const std::vector<OrderTriple> pool{{Scalar(-2), Scalar(-1), Scalar(-1)}};
        const auto found = order_axiom_check(GroupDescriptor::nonzero_reals(), standard_order, 0, 1, pool);
        if (!found) return std::string("pass");
        return "(" + fmt(found->a) + ", " + fmt(found->b) + ", " + fmt(found->c) + ")";
      }),
  };
}

inline std::vector<Check> m2_checks() {
  const double r3 = std::sqrt(3.0) / 2.0;
  return {
      equals("validates_nonzero_complex_research", "accepted", [] {
        fixtures::m2();
        return std::string("accepted");
      }),
      equals("consistent", "true", [] { return fmt(is_consistent(fixtures::m2())); }),
      predicate("row_products", "[0+1i, -1, 0+1i]", [] {
        const auto products = gm_branch_vectors(fixtures::m2()).row_products;
        return std::pair{fmt(products), same_matrix({products}, {{Scalar(0, 1), Scalar(-1), Scalar(0, 1)}}, 1e-12)};
      }),
      equals("branch_vector_count", "27",
             [] { return std::to_string(gm_branch_vectors(fixtures::m2()).vectors.size()); }),
      predicate("row1_roots_cube_root_of_i", fmt({Scalar(r3, 0.5), Scalar(-r3, 0.5), Scalar(0, -1)}, '{', '}'),
                [r3] {
                  const auto roots = gm_branch_vectors(fixtures::m2()).per_row_roots.at(0);
                  return std::pair{fmt(roots, '{', '}'),
                                   same_set(roots, {Scalar(r3, 0.5), Scalar(-r3, 0.5), Scalar(0, -1)}, 1e-9)};
                }),
      predicate("row2_roots_cube_root_of_-1", fmt({Scalar(0.5, r3), Scalar(-1), Scalar(0.5, -r3)}, '{', '}'),
                [r3] {
                  const auto roots = gm_branch_vectors(fixtures::m2()).per_row_roots.at(1);
                  return std::pair{fmt(roots, '{', '}'),
                                   same_set(roots, {Scalar(0.5, r3), Scalar(-1), Scalar(0.5, -r3)}, 1e-9)};
                }),
      predicate("row3_roots_equal_row1", "true", [] {
        const auto set = gm_branch_vectors(fixtures::m2());
        const bool same = same_set(set.per_row_roots.at(0), set.per_row_roots.at(2), 1e-12);
        return std::pair{fmt(same), same};
      }),
      equals("real_gm_refused", "ComplexEntries",
             [] { return error_code_of([] { geometric_mean_weights(fixtures::m2()); }); }),
      equals("ranking_refused_on_every_branch_vector", "27 of 27", [] {
        const auto set = gm_branch_vectors(fixtures::m2());
        std::size_t refused = 0;
        for (const auto& v : set.vectors) {
          if (error_code_of([&] { rank_entities(WeightVector{v, Normalization::None}, {"A", "B", "C"}); }) ==
              "NotOrderable") {
            ++refused;
          }
        }
        return std::to_string(refused) + " of " + std::to_string(set.vectors.size());
      }),
      equals("carrier_orderability", "not orderable, witness 0+1i of order 4", [] {
        const auto verdict = check_orderability(GroupDescriptor::nonzero_complex());
        if (verdict.orderable || !verdict.witness) return std::string("orderable");
        return "not orderable, witness " + fmt(verdict.witness->element) + " of order " +
               std::to_string(verdict.witness->order);
      }),
  };
}

inline std::vector<Check> m3_checks() {
  return {
      equals("validates_nonzero_complex_research", "accepted", [] {
        fixtures::m3();
        return std::string("accepted");
      }),
      equals("consistent", "true", [] { return fmt(is_consistent(fixtures::m3())); }),
      predicate("row_products_all_-1", "[-1, -1, -1, -1]", [] {
        const auto products = gm_branch_vectors(fixtures::m3()).row_products;
        bool ok = true;
        for (const Scalar& p : products) ok = ok && p == Scalar(-1);
        return std::pair{fmt(products), ok};
      }),
      predicate("per_row_fourth_roots_of_-1", fmt(sqrt2_over_2_set(), '{', '}'), [] {
        const auto set = gm_branch_vectors(fixtures::m3());
        bool ok = true;
        for (const auto& roots : set.per_row_roots) ok = ok && same_set(roots, sqrt2_over_2_set(), 1e-9);
        return std::pair{fmt(set.per_row_roots.at(0), '{', '}'), ok};
      }),
      equals("branch_vector_count", "256",
             [] { return std::to_string(gm_branch_vectors(fixtures::m3()).vectors.size()); }),
      predicate("branch_vector_with_four_distinct_coordinates", "exists", [] {
        const auto set = gm_branch_vectors(fixtures::m3());
        std::size_t count = 0;
        for (const auto& v : set.vectors) {
          bool distinct = true;
          for (std::size_t a = 0; a < v.size(); ++a) {
            for (std::size_t b = a + 1; b < v.size(); ++b) distinct = distinct && !near_abs(v[a], v[b], 1e-9);
          }
          if (distinct) ++count;
        }
        return std::pair{std::to_string(count) + " of " + std::to_string(set.vectors.size()), count > 0};
      }),
      predicate("all_branch_coordinates_non_real", "true", [] {
        bool all = true;
        for (const auto& v : gm_branch_vectors(fixtures::m3()).vectors) {
          for (const Scalar& s : v) all = all && !s.is_real();
        }
        return std::pair{fmt(all), all};
      }),
      equals("real_gm_refused", "NoRealRoot",
             [] { return error_code_of([] { geometric_mean_weights(fixtures::m3()); }); }),
      predicate("eigenvalues", "[4, 0, 0, 0]", [] {
        const auto eig = eigen_full_symmetric(RealMatrix::from(fixtures::m3()));
        const std::vector<double> want{4, 0, 0, 0};
        bool ok = eig.values.size() == want.size();
        for (std::size_t k = 0; ok && k < want.size(); ++k) ok = std::abs(eig.values[k] - want[k]) <= 1e-9;
        return std::pair{fmt(eig.values), ok};
      }),
      predicate("dominant_eigenvector_parallel_to_(-1,1,1,1)", "true", [] {
        const auto eig = eigen_full_symmetric(RealMatrix::from(fixtures::m3()));
        const std::vector<double>& v = eig.vectors.at(0);
        const double dot = (-v[0] + v[1] + v[2] + v[3]) / 2.0;
        const bool ok = std::abs(std::abs(dot) - 1.0) <= 1e-9;
        return std::pair{fmt(v), ok};
      }),
      predicate("listed_null_vectors_in_kernel", "M3 v = 0 for (1,0,0,1), (1,0,1,0), (1,1,0,0)", [] {
        const RealMatrix m = RealMatrix::from(fixtures::m3());
        const std::vector<std::vector<double>> listed{{1, 0, 0, 1}, {1, 0, 1, 0}, {1, 1, 0, 0}};
        double worst = 0.0;
        for (const auto& v : listed) {
          for (std::size_t i = 0; i < 4; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < 4; ++j) s += m(i, j) * v[j];
            worst = std::max(worst, std::abs(s));
          }
        }
        return std::pair{"max |M3 v| = " + format_scalar(Scalar(worst), kDisplayDigits), worst == 0.0};
      }),
      equals("perron_method_refused", "NotPositive",
             [] { return error_code_of([] { eigen_weights(fixtures::m3()); }); }),
  };
}

inline std::vector<Check> m4_checks() {
  return {
      predicate("log_map_M1_equals_printed_M4", fmt(fixtures::m4_additive().rows().at(0)) + " / " + fmt(fixtures::m4_additive().rows().at(1)), [] {
        const AdditiveMatrix got = log_map(fixtures::m1(), "M1");
        const bool same = same_matrix(got.rows(), fixtures::m4_additive().rows(), 0.0);
        return std::pair{fmt(got.rows().at(0)) + " / " + fmt(got.rows().at(1)), same};
      }),
      equals("M4_reciprocal", "false", [] { return fmt(additive_is_reciprocal(fixtures::m4_additive())); }),
      equals("M4_consistent", "false", [] { return fmt(additive_is_consistent(fixtures::m4_additive())); }),
      equals("M1_consistent_but_image_not", "true / false", [] {
        return fmt(is_consistent(fixtures::m1())) + " / " + fmt(additive_is_consistent(log_map(fixtures::m1())));
      }),
      equals("branch_cut_entries", "(0,1) (1,0) (1,2) (2,1)", [] {
        const AdditiveMatrix a = log_map(fixtures::m1());
        std::string out;
        for (const auto& [i, j] : a.provenance()->branch_cut_entries) {
          if (!out.empty()) out += ' ';
          out += "(" + std::to_string(i) + "," + std::to_string(j) + ")";
        }
        return out;
      }),
      predicate("exp_map_M4_is_M1", "true", [] {
        const PcMatrix back = exp_map(fixtures::m4_additive(), GroupDescriptor::nonzero_reals(), Mode::Research);
        const bool same = same_matrix(back.rows(), fixtures::m1().rows(), 0.0);
        return std::pair{fmt(same), same};
      }),
      predicate("log_map_M2_equals_printed_A4", "true", [] {
        const bool same = same_matrix(log_map(fixtures::m2()).rows(), fixtures::a4_additive().rows(), 1e-15);
        return std::pair{fmt(same), same};
      }),
      Check{"claim_A4_inconsistent", "inconsistent", true, []() -> std::tuple<std::string, bool, std::string> {
              const bool consistent = additive_is_consistent(log_map(fixtures::m2()));
              return {consistent ? "consistent" : "inconsistent", !consistent,
                      "every triple of log_map(M2) satisfies a_ik + a_kj = a_ij; the stated claim calls it "
                      "inconsistent and names it A2 while the printed matrix is A4"};
            }},
      Check{"claim_A4_reciprocal", "reciprocal", true, []() -> std::tuple<std::string, bool, std::string> {
              const bool reciprocal = additive_is_reciprocal(log_map(fixtures::m2()));
              return {reciprocal ? "reciprocal" : "non-reciprocal", reciprocal, ""};
            }},
  };
}

inline std::vector<Check> exam_checks() {
  auto proportional = [](const std::vector<Scalar>& got) {
    const std::vector<double> want{0.3, 0.2, 0.1, 0.4};
    bool ok = got.size() == want.size();
    for (std::size_t k = 0; ok && k < want.size(); ++k) ok = got[k].is_real() && std::abs(got[k].re() - want[k]) <= 1e-9;
    return ok;
  };
  return {
      equals("validates_strict", "accepted", [] {
        fixtures::exam();
        return std::string("accepted");
      }),
      equals("consistent", "true", [] { return fmt(is_consistent(fixtures::exam())); }),
      equals("kii", "0", [] { return fmt(Scalar(kii(fixtures::exam()).kii)); }),
      predicate("gm_weights_proportional_to_[30,20,10,40]", "[0.3, 0.2, 0.1, 0.4]", [proportional] {
        const auto w = geometric_mean_weights(fixtures::exam()).values;
        return std::pair{fmt(w), proportional(w)};
      }),
      predicate("eigen_weights_proportional_to_[30,20,10,40]", "[0.3, 0.2, 0.1, 0.4]", [proportional] {
        const auto w = eigen_weights(fixtures::exam()).weights.values;
        return std::pair{fmt(w), proportional(w)};
      }),
      predicate("dominant_eigenvalue", "4", [] {
        const double lambda = eigen_weights(fixtures::exam()).eigenvalue;
        return std::pair{fmt(Scalar(lambda)), std::abs(lambda - 4.0) <= 1e-9};
      }),
      equals("entry_D/C", "4", [] { return fmt(fixtures::exam().at(3, 2)); }),
      equals("ranking", "D, A, B, C", [] {
        std::string out;
        for (const auto& r : rank_entities(geometric_mean_weights(fixtures::exam()), fixtures::exam_labels())) {
          if (!out.empty()) out += ", ";
          out += r.label;
        }
        return out;
      }),
      equals("comparisons_beyond_spanning_tree", "3", [] {
        const std::size_t n = fixtures::exam().n();
        return std::to_string(superfluous_count(n, n * (n - 1) / 2));
      }),
      predicate("tree_completion_reproduces_matrix", "true", [] {
        const PcMatrix tree = complete_from_tree(4, {{0, 1, 1.5}, {1, 2, 2.0}, {2, 3, 0.25}});
        const bool same = same_matrix(tree.rows(), fixtures::exam().rows(), 1e-12);
        return std::pair{fmt(same), same};
      }),
      equals("carrier_orderability", "orderable",
             [] { return check_orderability(GroupDescriptor::positive_reals()).orderable ? "orderable" : "not orderable"; }),
  };
}

inline std::vector<Check> checks_for(std::string_view name) {
  if (name == "M1") return m1_checks();
  if (name == "M2") return m2_checks();
  if (name == "M3") return m3_checks();
  if (name == "M4_additive") return m4_checks();
  if (name == "EXAM") return exam_checks();
  throw Error(Errc::UnknownFixture, "unknown fixture '" + std::string(name) + "'");
}

}  // namespace detail

inline Fixture fixture(std::string_view name) {
  std::vector<std::string> expected;
  for (const auto& check : detail::checks_for(name)) expected.push_back(check.name);
  if (name == "M1") return {"M1", fixtures::m1(), expected};
  if (name == "M2") return {"M2", fixtures::m2(), expected};
  if (name == "M3") return {"M3", fixtures::m3(), expected};
  if (name == "M4_additive") return {"M4_additive", fixtures::m4_additive(), expected};
  return {"EXAM", fixtures::exam(), expected};
}

/// Evaluates every expected finding of a fixture against the live modules.
inline FindingsReport run_report(std::string_view name) {
  FindingsReport report{std::string(name), {}};
  for (const auto& check : detail::checks_for(name)) {
    Finding f{check.name, check.expected, {}, false, check.claim_check, {}};
    try {
      std::tie(f.computed, f.pass, f.note) = check.run();
    } catch (const std::exception& e) {
      f.computed = std::string("error: ") + e.what();
    }
    report.findings.push_back(std::move(f));
  }
  return report;
}

inline json report_to_json(const FindingsReport& report) {
  json findings = json::array();
  for (const Finding& f : report.findings) {
    json item{{"name", f.name}, {"expected", f.expected}, {"computed", f.computed},
              {"verdict", f.pass ? "PASS" : "FAIL"}};
    if (f.claim_check) item["claim_check"] = true;
    if (!f.note.empty()) item["note"] = f.note;
    findings.push_back(std::move(item));
  }
  return {{"fixture", report.fixture}, {"overall", report.overall() ? "PASS" : "FAIL"}, {"findings", findings}};
}

/// One assertion per line: name | expected | computed | verdict.
inline std::string report_to_text(const json& report) {
  std::string out = "fixture " + report.at("fixture").get<std::string>() + ": " +
                    report.at("overall").get<std::string>() + "\n";
  for (const json& f : report.at("findings")) {
    out += "  " + f.at("name").get<std::string>() + " | expected " + f.at("expected").get<std::string>() +
           " | computed " + f.at("computed").get<std::string>() + " | " + f.at("verdict").get<std::string>();
    if (f.contains("claim_check")) out += " (claim check)";
    out += "\n";
    if (f.contains("note")) out += "    note: " + f.at("note").get<std::string>() + "\n";
  }
  return out;
}

}  // namespace pairwise

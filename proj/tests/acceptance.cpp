// Runs the acceptance criteria and prints one PASS/FAIL line per criterion.
// Exit status is nonzero when any criterion fails.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <pairwise/counterexamples.hpp>
#include <pairwise/service.hpp>

#include "test_util.hpp"

namespace {

using namespace pairwise;

struct Outcome {
  bool pass;
  std::string detail;
};

bool set_matches(const std::vector<Scalar>& got, const std::vector<std::complex<double>>& want, double tol) {
  if (got.size() != want.size()) return false;
  for (const auto& w : want) {
    const bool hit = std::any_of(got.begin(), got.end(), [&](const Scalar& g) { return std::abs(g.complex() - w) <= tol; });
    if (!hit) return false;
  }
  return true;
}

Outcome c1_m3_eigenvalues() {
  const SymmetricEigen e = eigen_full_symmetric(RealMatrix::from(fixtures::m3()));
  const double want[] = {4, 0, 0, 0};
  bool ok = e.values.size() == 4;
  for (std::size_t k = 0; ok && k < 4; ++k) ok = std::abs(e.values[k] - want[k]) <= 1e-9;
  std::ostringstream d;
  for (double v : e.values) d << v << ' ';
  return {ok, "eigenvalues " + d.str()};
}

Outcome c2_m2_branches() {
  const BranchSet set = gm_branch_vectors(fixtures::m2());
  const double h = std::sqrt(3.0) / 2.0;
  const bool roots = set_matches(set.per_row_roots[0], {{h, 0.5}, {-h, 0.5}, {0, -1}}, 1e-9);
  return {set.vectors.size() == 27 && roots, std::to_string(set.vectors.size()) + " vectors, row-1 roots " +
                                                 (roots ? "match" : "differ")};
}

Outcome c3_m1_gm() {
  const WeightVector w = geometric_mean_weights(fixtures::m1());
  const bool ok = w.values == std::vector<Scalar>{Scalar(-1), Scalar(1), Scalar(-1)};
  return {ok, "gm " + detail::fmt(w.values)};
}

Outcome c4_m3_roots() {
  const BranchSet set = gm_branch_vectors(fixtures::m3());
  bool products = true;
  for (const Scalar& p : set.row_products) products = products && near_abs(p, Scalar(-1), 1e-9);
  const double r = std::sqrt(2.0) / 2.0;
  bool roots = true;
  for (const auto& row : set.per_row_roots) roots = roots && set_matches(row, {{r, r}, {r, -r}, {-r, r}, {-r, -r}}, 1e-9);
  const bool distinct = std::any_of(set.vectors.begin(), set.vectors.end(), [](const std::vector<Scalar>& v) {
    for (std::size_t a = 0; a < v.size(); ++a) {
      for (std::size_t b = a + 1; b < v.size(); ++b) {
        if (near_abs(v[a], v[b], 1e-9)) return false;
      }
    }
    return true;
  });
  return {products && roots && set.vectors.size() == 256 && distinct,
          std::to_string(set.vectors.size()) + " vectors, products " + (products ? "-1" : "off") +
              ", four-distinct " + (distinct ? "found" : "missing")};
}

Outcome c5_exam() {
  const PcMatrix m = fixtures::exam();
  const WeightVector gm = geometric_mean_weights(m);
  const EigenWeights eig = eigen_weights(m);
  const double want[] = {0.3, 0.2, 0.1, 0.4};
  bool ok = true;
  for (std::size_t k = 0; k < 4; ++k) {
    ok = ok && std::abs(gm.values[k].re() - want[k]) <= 1e-9 && std::abs(eig.weights.values[k].re() - want[k]) <= 1e-9;
  }
  ok = ok && std::abs(m.at(3, 2).re() - 4.0) <= 1e-12;
  std::string order;
  for (const RankedEntity& e : rank_entities(gm, fixtures::exam_labels())) order += e.label;
  return {ok && order == "DABC", "ranking " + order + ", D/C " + detail::fmt(m.at(3, 2))};
}

Outcome c6_triad() {
  const PcMatrix m = PcMatrix::from_entries({{1, 2, 5}, {0.5, 1, 3}, {0.2, 1.0 / 3.0, 1}},
                                            GroupDescriptor::positive_reals());
  const double oracle = std::min(std::abs(1.0 - 5.0 / 6.0), std::abs(1.0 - 6.0 / 5.0));
  const double got = kii(m).kii;
  return {!is_consistent(m) && std::abs(got - oracle) <= 1e-12, "kii " + detail::format_double(got, 17)};
}

Outcome c7_orderability() {
  bool ok = check_orderability(GroupDescriptor::positive_reals()).orderable;
  const auto real = find_torsion_witness(GroupDescriptor::nonzero_reals());
  ok = ok && real && real->element == Scalar(-1) && real->order == 2;
  const auto cplx = find_torsion_witness(GroupDescriptor::nonzero_complex());
  ok = ok && cplx && cplx->element == Scalar(0, 1) && cplx->order == 4;
  for (int n = 2; n <= 12; ++n) {
    const auto g = GroupDescriptor::cyclic_roots_of_unity(n);
    const OrderabilityVerdict v = check_orderability(g);
    if (v.orderable || !v.witness) return {false, "cyclic " + std::to_string(n) + " judged orderable"};
    // Independent brute force with std::complex.
    const std::complex<double> w = v.witness->element.complex();
    std::complex<double> power = w;
    int order = 1;
    while (std::abs(power - 1.0) > 1e-9 && order <= 2 * n) {
      power *= w;
      ++order;
    }
    if (order != v.witness->order) return {false, "cyclic " + std::to_string(n) + " witness order mismatch"};
  }
  return {ok, "PositiveReals orderable; -1 order 2; i order 4; C2..C12 verified"};
}

Outcome c8_order_axioms() {
  const OrderTriple pool[] = {{Scalar(-2), Scalar(-1), Scalar(-1)}};
  const auto found = order_axiom_check(GroupDescriptor::nonzero_reals(), standard_order, 100, 1, pool);
  const bool ok = found && found->a == Scalar(-2) && found->b == Scalar(-1) && found->c == Scalar(-1);
  return {ok, found ? "counterexample (" + detail::fmt(found->a) + ", " + detail::fmt(found->b) + ", " +
                          detail::fmt(found->c) + ")"
                    : "no counterexample"};
}

Outcome c9_log_m1() {
  const AdditiveMatrix a = log_map(fixtures::m1());
  const Scalar ipi(0.0, std::numbers::pi);
  bool exact = true;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      exact = exact && a.at(i, j) == fixtures::m4_additive().at(i, j) && (a.at(i, j) == Scalar(0) || a.at(i, j) == ipi);
    }
  }
  const bool rec = additive_is_reciprocal(a);
  const bool con = additive_is_consistent(a);
  return {exact && !rec && !con, std::string("entries {0, i pi} ") + (exact ? "exact" : "differ") +
                                     ", reciprocal " + detail::fmt(rec) + ", consistent " + detail::fmt(con)};
}

// Passes when the report states the computed verdicts, whatever they are.
Outcome c10_claim_check() {
  const FindingsReport report = run_report("M4_additive");
  const bool consistent = additive_is_consistent(log_map(fixtures::m2()));
  const bool reciprocal = additive_is_reciprocal(log_map(fixtures::m2()));
  std::string stated;
  int found = 0;
  for (const Finding& f : report.findings) {
    if (f.name == "claim_A4_inconsistent") {
      found += f.computed == (consistent ? "consistent" : "inconsistent");
      stated += f.name + "=" + f.computed + (f.pass ? " (agrees) " : " (disagrees) ");
    }
    if (f.name == "claim_A4_reciprocal") {
      found += f.computed == (reciprocal ? "reciprocal" : "non-reciprocal");
      stated += f.name + "=" + f.computed + (f.pass ? " (agrees)" : " (disagrees)");
    }
  }
  return {found == 2, stated};
}

Outcome c11_round_trip() {
  std::mt19937_64 rng(11);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto w = testing::random_weights(rng, 3 + static_cast<std::size_t>(trial) % 6);
    WeightVector v;
    for (double x : w) v.values.emplace_back(x);
    const WeightVector got = geometric_mean_weights(reconstruct(v));
    double total = 0.0;
    for (double x : w) total += x;
    for (std::size_t k = 0; k < w.size(); ++k) worst = std::max(worst, std::abs(got.values[k].re() - w[k] / total) / (w[k] / total));
  }
  return {worst < 1e-10, "max relative error " + detail::format_double(worst, 3)};
}

Outcome c12_kii_iff() {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> factor(1.01, 2.0);
  int agree = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 3 + static_cast<std::size_t>(trial) % 4;
    const auto w = testing::random_weights(rng, n);
    const PcMatrix m = trial < 100 ? testing::consistent_matrix(w) : testing::perturbed_matrix(w, 0, n - 1, factor(rng));
    const bool zero = kii(m).consistent(kConsistencyTolerance);
    agree += zero == is_consistent(m) && zero == (trial < 100);
  }
  return {agree == 200, std::to_string(agree) + "/200 agree"};
}

Outcome c13_trees() {
  std::mt19937_64 rng(13);
  int trees = 0;
  double worst = 0.0;
  for (std::size_t n = 2; n <= 5; ++n) {
    const PcMatrix source = testing::consistent_matrix(testing::random_weights(rng, n));
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    }
    std::vector<bool> pick(edges.size(), false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(n - 1), true);
    do {
      std::vector<Judgment> judgments;
      for (std::size_t e = 0; e < edges.size(); ++e) {
        if (pick[e]) judgments.push_back({edges[e].first, edges[e].second, source.at(edges[e].first, edges[e].second)});
      }
      if (judgment_components(n, judgments) != 1) continue;
      ++trees;
      const PcMatrix rebuilt = complete_from_tree(n, judgments);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          worst = std::max(worst, std::abs(rebuilt.at(i, j).re() - source.at(i, j).re()) / source.at(i, j).re());
        }
      }
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  // 1 + 3 + 16 + 125 labelled trees.
  return {trees == 145 && worst <= 1e-10,
          std::to_string(trees) + " trees, max relative error " + detail::format_double(worst, 3)};
}

Outcome c14_log_preserves() {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> factor(1.01, 2.0);
  int agree = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 3 + static_cast<std::size_t>(trial) % 5;
    const auto w = testing::random_weights(rng, n);
    const PcMatrix m = trial % 2 ? testing::consistent_matrix(w) : testing::perturbed_matrix(w, 0, 1, factor(rng));
    const AdditiveMatrix a = log_map(m);
    agree += additive_is_consistent(a) == is_consistent(m) && additive_is_reciprocal(a);
    const PcMatrix back = exp_map(a, GroupDescriptor::positive_reals());
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        worst = std::max(worst, std::abs(back.at(i, j).re() - m.at(i, j).re()) / m.at(i, j).re());
      }
    }
  }
  return {agree == 200 && worst <= 1e-12,
          std::to_string(agree) + "/200 verdicts preserved, exp(log) error " + detail::format_double(worst, 3)};
}

Outcome c15_m2_ranking() {
  const BranchSet set = gm_branch_vectors(fixtures::m2());
  int refused = 0;
  for (const auto& v : set.vectors) {
    try {
      rank_entities(WeightVector{v}, fixtures::m2().labels());
    } catch (const Error& e) {
      refused += e.code() == Errc::NotOrderable;
    }
  }
  return {refused == 27 && set.vectors.size() == 27, std::to_string(refused) + "/27 refused"};
}

Outcome c16_service_permutations() {
  SessionStore store;
  httplib::Server server;
  mount_routes(server, store);
  const int port = server.bind_to_any_port("127.0.0.1");
  std::thread thread([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  const json judgments[] = {{{"i", "A"}, {"j", "B"}, {"value", 2}},
                            {{"i", "B"}, {"j", "C"}, {"value", 3}},
                            {{"i", "A"}, {"j", "C"}, {"value", 5}}};
  std::vector<int> order{0, 1, 2};
  std::vector<double> values;
  httplib::Client client("127.0.0.1", port);
  do {
    auto created = client.Post("/sessions", json{{"labels", {"A", "B", "C"}}}.dump(), "application/json");
    if (!created || created->status != 201) break;
    const std::string id = json::parse(created->body).at("id");
    json last;
    for (int k : order) {
      auto res = client.Post("/sessions/" + id + "/judgments", judgments[k].dump(), "application/json");
      if (res && res->status == 200) last = json::parse(res->body);
    }
    if (last.contains("report") && last.at("report").contains("kii")) values.push_back(last.at("report").at("kii"));
  } while (std::next_permutation(order.begin(), order.end()));
  server.stop();
  thread.join();

  bool ok = values.size() == 6;
  for (double v : values) ok = ok && std::abs(v - values.front()) <= 1e-12;
  return {ok, std::to_string(values.size()) + " orders, kii " +
                  (values.empty() ? std::string("missing") : detail::format_double(values.front(), 12))};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"M3 symmetric eigenvalues [4, 0, 0, 0]", c1_m3_eigenvalues},
      {"M2 has 27 geometric-mean branch vectors", c2_m2_branches},
      {"M1 geometric mean [-1, 1, -1]", c3_m1_gm},
      {"M3 fourth roots of -1 and 256 branch vectors", c4_m3_roots},
      {"EXAM weights, D/C = 4 and ranking D, A, B, C", c5_exam},
      {"triad (2, 5, 3) has Kii 1/6", c6_triad},
      {"orderability verdicts and torsion witnesses", c7_orderability},
      {"order axioms fail on (-2, -1, -1) in NonzeroReals", c8_order_axioms},
      {"log of M1 is neither reciprocal nor consistent", c9_log_m1},
      {"log of M2 verdicts reported against the stated claim", c10_claim_check},
      {"reconstruct / geometric mean round trip", c11_round_trip},
      {"Kii zero iff consistent", c12_kii_iff},
      {"every spanning tree reproduces the matrix", c13_trees},
      {"log map preserves verdicts; exp inverts log", c14_log_preserves},
      {"ranking refused on all M2 branch vectors", c15_m2_ranking},
      {"service Kii independent of submission order", c16_service_permutations},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    Outcome o{false, {}};
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::printf("[%s] %2d. %s: %s\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", index - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}

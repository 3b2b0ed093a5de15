#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include <pairwise/counterexamples.hpp>
#include <pairwise/solvers.hpp>

#include "test_util.hpp"

namespace pairwise {
namespace {

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return Errc::ParseError;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

TEST(GeometricMean, ExamWeightsSumToOne) {
  const WeightVector w = geometric_mean_weights(fixtures::exam());
  EXPECT_EQ(w.normalization, Normalization::SumToOne);
  const double oracle[] = {0.3, 0.2, 0.1, 0.4};
  for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(w.values[k].re(), oracle[k], 1e-12);
}

TEST(GeometricMean, M1RealBranch) {
  const WeightVector w = geometric_mean_weights(fixtures::m1());
  EXPECT_EQ(w.normalization, Normalization::None);
  EXPECT_EQ(w.values, (std::vector<Scalar>{-1, 1, -1}));
}

TEST(GeometricMean, Refusals) {
  EXPECT_EQ(code_of([] { geometric_mean_weights(fixtures::m2()); }), Errc::ComplexEntries);
  EXPECT_EQ(code_of([] { geometric_mean_weights(fixtures::m3()); }), Errc::NoRealRoot);
}

TEST(BranchVectors, M2HasTwentySevenVectors) {
  const BranchSet set = gm_branch_vectors(fixtures::m2());
  EXPECT_EQ(set.vectors.size(), 27u);
  EXPECT_EQ(set.row_products[0], Scalar(0, 1));
  EXPECT_EQ(set.row_products[1], Scalar(-1));
  // Cube roots of -1: -1 and e^{+-i pi/3}.
  EXPECT_EQ(set.per_row_roots[1].size(), 3u);
  bool has_minus_one = false;
  for (const Scalar& r : set.per_row_roots[1]) has_minus_one = has_minus_one || near_abs(r, Scalar(-1), 1e-12);
  EXPECT_TRUE(has_minus_one);
  for (const auto& v : set.vectors) EXPECT_FALSE(WeightVector{v}.all_real());
}

TEST(BranchVectors, StrictMatrixHasOnlyOnePositiveRealVector) {
  const BranchSet set = gm_branch_vectors(fixtures::exam());
  std::size_t positive = 0;
  for (const auto& v : set.vectors) positive += WeightVector{v}.all_positive_real() ? 1 : 0;
  EXPECT_EQ(positive, 1u);
  EXPECT_EQ(set.vectors.size(), 256u);
}

TEST(EigenWeights, ExamAgreesWithGeometricMean) {
  const EigenWeights e = eigen_weights(fixtures::exam());
  EXPECT_NEAR(e.eigenvalue, 4.0, 1e-9);
  const WeightVector gm = geometric_mean_weights(fixtures::exam());
  for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(e.weights.values[k].re(), gm.values[k].re(), 1e-9);
}

TEST(EigenWeights, RefusesNegativeEntries) {
  EXPECT_EQ(code_of([] { eigen_weights(fixtures::m1()); }), Errc::NotPositive);
}

TEST(EigenWeights, ReportsNonConvergence) {
  const PcMatrix m = testing::perturbed_matrix({1, 2, 3, 4, 5}, 0, 4, 9.0);
  EXPECT_EQ(code_of([&] { eigen_weights(m, 1e-300, 1); }), Errc::NoConvergence);
}

TEST(EigenWeights, PerronValueAtLeastN) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> factor(1.01, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    const auto w = testing::random_weights(rng, 5);
    const EigenWeights e = eigen_weights(testing::perturbed_matrix(w, 1, 2, factor(rng)));
    EXPECT_GE(e.eigenvalue, 5.0 - 1e-9);
  }
}

TEST(Jacobi, M3Spectrum) {
  const SymmetricEigen e = eigen_full_symmetric(RealMatrix::from(fixtures::m3()));
  ASSERT_EQ(e.values.size(), 4u);
  EXPECT_NEAR(e.values[0], 4.0, 1e-12);
  for (std::size_t k = 1; k < 4; ++k) EXPECT_NEAR(e.values[k], 0.0, 1e-12);
  // Dominant eigenvector is parallel to (-1, 1, 1, 1); sign fixed positive first.
  const std::vector<double> dominant{0.5, -0.5, -0.5, -0.5};
  for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(e.vectors[0][k], dominant[k], 1e-12);
}

TEST(Jacobi, RejectsAsymmetricAndLarge) {
  EXPECT_EQ(code_of([] { eigen_full_symmetric(RealMatrix{{1, 2}, {3, 1}}); }), Errc::NotSymmetric);
  EXPECT_EQ(code_of([] { eigen_full_symmetric(RealMatrix::identity(17)); }), Errc::BadShape);
}

TEST(Jacobi, KnownTwoByTwo) {
  const SymmetricEigen e = eigen_full_symmetric(RealMatrix{{2, 1}, {1, 2}});
  EXPECT_NEAR(e.values[0], 3.0, 1e-14);
  EXPECT_NEAR(e.values[1], 1.0, 1e-14);
  EXPECT_NEAR(e.vectors[0][0], std::sqrt(0.5), 1e-14);
  EXPECT_NEAR(e.vectors[1][1], -std::sqrt(0.5), 1e-14);
}

TEST(Properties, JacobiResidualsAndOrthonormality) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> entry(-5.0, 5.0);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 9;
    RealMatrix a(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) a(i, j) = a(j, i) = entry(rng);
    }
    const SymmetricEigen e = eigen_full_symmetric(a);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        double av = 0.0;
        for (std::size_t j = 0; j < n; ++j) av += a(i, j) * e.vectors[k][j];
        EXPECT_NEAR(av, e.values[k] * e.vectors[k][i], 1e-9);
      }
      for (std::size_t l = 0; l < n; ++l) EXPECT_NEAR(dot(e.vectors[k], e.vectors[l]), k == l ? 1.0 : 0.0, 1e-9);
      if (k + 1 < n) {
        EXPECT_GE(e.values[k], e.values[k + 1]);
      }
    }
  }
}

TEST(Properties, ReconstructRoundTrip) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 3 + trial % 6;
    const auto raw = testing::random_weights(rng, n);
    double total = 0.0;
    for (double x : raw) total += x;
    WeightVector w;
    for (double x : raw) w.values.emplace_back(x / total);
    const PcMatrix m = reconstruct(w);
    EXPECT_TRUE(is_consistent(m));
    const WeightVector back = geometric_mean_weights(m);
    for (std::size_t k = 0; k < n; ++k) {
      EXPECT_LT(std::abs(back.values[k].re() - w.values[k].re()) / w.values[k].re(), 1e-10) << trial;
    }
    const EigenWeights e = eigen_weights(m);
    for (std::size_t k = 0; k < n; ++k) EXPECT_NEAR(e.weights.values[k].re(), w.values[k].re(), 1e-9);
  }
}

TEST(Reconstruct, PicksSmallestCarrier) {
  EXPECT_EQ(reconstruct(WeightVector{{1, 2}}).group().kind(), GroupKind::PositiveReals);
  EXPECT_EQ(reconstruct(WeightVector{{-1, 2}}).group().kind(), GroupKind::NonzeroReals);
  EXPECT_EQ(reconstruct(WeightVector{{Scalar(0, 1), 2}}).group().kind(), GroupKind::NonzeroComplex);
  EXPECT_EQ(code_of([] { reconstruct(WeightVector{{0, 2}}); }), Errc::ZeroWeight);
}

TEST(Reconstruct, ExamEntries) {
  const PcMatrix m = fixtures::exam();
  EXPECT_NEAR(m.at(0, 1).re(), 1.5, 1e-15);
  EXPECT_NEAR(m.at(3, 2).re(), 4.0, 1e-15);
  EXPECT_EQ(m.at(2, 2), Scalar(1));
}

TEST(Ranking, ExamOrder) {
  const auto ranked = rank_entities(fixtures::exam_weights(), fixtures::exam_labels());
  ASSERT_EQ(ranked.size(), 4u);
  EXPECT_EQ(ranked[0].label, "D");
  EXPECT_EQ(ranked[1].label, "A");
  EXPECT_EQ(ranked[2].label, "B");
  EXPECT_EQ(ranked[3].label, "C");
}

TEST(Ranking, TiesKeepLabelOrder) {
  const auto ranked = rank_entities(WeightVector{{1, 2, 1}}, {"x", "y", "z"});
  EXPECT_EQ(ranked[1].label, "x");
  EXPECT_EQ(ranked[2].label, "z");
}

TEST(Ranking, RefusesNonPositive) {
  EXPECT_EQ(code_of([] { rank_entities(WeightVector{{-1, 1, -1}}, {"A", "B", "C"}); }), Errc::NotOrderable);
  EXPECT_EQ(code_of([] { rank_entities(WeightVector{{Scalar(0, 1), 1}}, {"A", "B"}); }), Errc::NotOrderable);
}

TEST(Normalize, MaxToOne) {
  const WeightVector w = normalized(WeightVector{{2, 4, 1}}, Normalization::MaxToOne);
  EXPECT_EQ(w.values, (std::vector<Scalar>{0.5, 1, 0.25}));
}

}  // namespace
}  // namespace pairwise

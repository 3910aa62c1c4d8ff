#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>
#include <omp.h>

#include "apnls/core/basis.hpp"
#include "apnls/core/convolution.hpp"
#include "apnls/core/errors.hpp"
#include "apnls/core/series.hpp"
#include "apnls/oracle/grid_mean.hpp"
#include "support.hpp"

namespace {

using namespace apnls;
using apnls::testing::bitwise_equal;
using apnls::testing::pointwise;
using apnls::testing::random_series;

const double kSqrt2 = std::numbers::sqrt2;

BasisPtr b12() { return make_basis({1.0, kSqrt2}); }

TEST(Basis, RejectsBadGenerators) {
  EXPECT_THROW(Basis(std::vector<double>{}), DimensionError);
  EXPECT_THROW(Basis(std::vector<double>(9, 1.0)), DimensionError);
  EXPECT_THROW(Basis({1.0, std::nan("")}), DomainError);
}

TEST(Basis, WarnsOnZeroAndRepeatedGenerators) {
  EXPECT_TRUE(Basis({1.0, kSqrt2}).warnings().empty());
  EXPECT_EQ(Basis({1.0, 0.0}).warnings().size(), 1u);
  EXPECT_EQ(Basis({1.0, 1.0}).warnings().size(), 1u);
}

TEST(Basis, NamedGenerators) {
  EXPECT_EQ(named_generator("sqrt2"), std::numbers::sqrt2);
  EXPECT_EQ(named_generator("golden"), std::numbers::phi);
  EXPECT_EQ(named_generator("pi"), std::numbers::pi);
  EXPECT_THROW(named_generator("tau"), ConfigError);
}

TEST(FrequencyOf, Examples) {
  Basis b({1.0, kSqrt2});
  EXPECT_NEAR(frequency_of(b, {2, -1}), 0.5857864376, 1e-10);
  EXPECT_EQ(frequency_of(b, {0, 0}), 0.0);
  EXPECT_EQ(frequency_of(b, {1, 1}), -frequency_of(b, {-1, -1}));
  EXPECT_THROW(frequency_of(b, {1, 1, 1}), DimensionError);
}

TEST(CollisionScan, Examples) {
  EXPECT_TRUE(collision_scan(Basis({1.0, kSqrt2}), 3).pairs.empty());
  EXPECT_TRUE(collision_scan(Basis({1.0}), 5).pairs.empty());

  CollisionScan s = collision_scan(Basis({1.0, 2.0}, false), 2);
  bool found = false;
  for (const auto& [a, b] : s.pairs) found |= (a == FreqVector{0, 1} && b == FreqVector{2, 0});
  EXPECT_TRUE(found);
  EXPECT_EQ(s.box_size, 25u);
  EXPECT_FALSE(s.large_box_warning);
}

TEST(CollisionScan, BruteForceAgreement) {
  // Every pair in the box against every other: the sweep must find exactly these.
  Basis b({1.0, 0.5, 1.5}, false);
  const int r = 2;
  std::vector<FreqVector> box;
  for (int i = -r; i <= r; ++i)
    for (int j = -r; j <= r; ++j)
      for (int k = -r; k <= r; ++k) box.push_back({i, j, k});
  std::size_t expected = 0;
  for (std::size_t x = 0; x < box.size(); ++x)
    for (std::size_t y = x + 1; y < box.size(); ++y)
      if (std::abs(frequency_of(b, box[x]) - frequency_of(b, box[y])) < b.independence_tol()) ++expected;
  CollisionScan s = collision_scan(b, r);
  EXPECT_EQ(s.pairs.size(), expected);
  for (const auto& [a, c] : s.pairs) EXPECT_LT(a, c);
}

TEST(CollisionScan, LargeBox) {
  EXPECT_THROW(collision_scan(Basis({1.0}), 0), DomainError);
  EXPECT_TRUE(collision_scan(Basis({1.0, kSqrt2, std::numbers::sqrt3}), 50).large_box_warning);
}

TEST(Series, CanonicalForm) {
  BasisPtr b = b12();
  APSeries f(b, {{{1, 0}, {1.0, 0.0}}, {{0, 0}, {2.0, 0.0}}, {{1, 0}, {-1.0, 0.0}}, {{0, 1}, {3.0, 0.0}}});
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f.terms()[0].freq, (FreqVector{0, 0}));
  EXPECT_EQ(f.terms()[1].freq, (FreqVector{0, 1}));
  EXPECT_THROW(APSeries(b, {{{1, 0, 0}, {1.0, 0.0}}}), DimensionError);
}

TEST(Series, AddScaleConjugate) {
  BasisPtr b = b12();
  EXPECT_EQ(conjugate(APSeries::monomial(b, {1, 0}, 1.0)), APSeries::monomial(b, {-1, 0}, 1.0));
  std::mt19937_64 rng(7);
  APSeries f = random_series(b, 5, 3, 1.0, rng);
  EXPECT_TRUE(add(f, scale(f, -1.0)).empty());
  EXPECT_TRUE(bitwise_equal(conjugate(conjugate(f)), f));
  APSeries other = APSeries::constant(make_basis({1.0, 2.0}), 1.0);
  EXPECT_THROW(add(f, other), BasisMismatch);
  EXPECT_THROW(multiply(f, other), BasisMismatch);
}

TEST(Series, BasisCompatibilityIsByValue) {
  APSeries f = APSeries::constant(b12(), 1.0);
  APSeries g = APSeries::constant(b12(), 2.0);
  EXPECT_EQ(add(f, g).coefficient({0, 0}), Complex(3.0, 0.0));
}

TEST(Norms, Examples) {
  BasisPtr b = b12();
  APSeries f(b, {{{1, 0}, {3.0, 0.0}}, {{0, 1}, {0.0, -4.0}}});
  EXPECT_EQ(a_norm(f), 7.0);
  EXPECT_EQ(l2_norm(f), 5.0);
  EXPECT_EQ(a_norm(APSeries(b)), 0.0);

  BasisPtr dep = make_basis({1.0, 2.0}, false);
  EXPECT_EQ(l2_norm(APSeries(dep, {{{2, 0}, {1.0, 0.0}}, {{0, 1}, {-1.0, 0.0}}})), 0.0);
}

TEST(Norms, ParsevalAndOrdering) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    APSeries f = random_series(b12(), 1 + trial % 12, 4, 2.0, rng);
    double sum2 = 0.0;
    for (const Term& t : f.terms()) sum2 += std::norm(t.coeff);
    const double l2 = l2_norm(f);
    EXPECT_NEAR(l2 * l2, sum2, 1e-12);
    EXPECT_LE(l2, a_norm(f));
  }
}

TEST(MeanValue, Examples) {
  BasisPtr b = b12();
  EXPECT_EQ(mean_value(APSeries::constant(b, {2.0, 1.0})), Complex(2.0, 1.0));
  EXPECT_EQ(mean_value(APSeries::monomial(b, {1, 0}, 5.0)), Complex(0.0, 0.0));

  APSeries f(b, {{{1, 0}, 1.0}, {{0, 1}, 1.0}});
  APSeries f2 = multiply(f, conjugate(f)).series;
  EXPECT_EQ(mean_value(f2), Complex(2.0, 0.0));
  Complex oracle = oracle::grid_mean(f2, {1e4, 1000000});
  EXPECT_NEAR(oracle.real(), 2.0, 1e-2);
  EXPECT_NEAR(inner_product(f, f).real(), 2.0, 1e-15);

  // Dependent basis: frequency 2 reached two ways, frequency 0 via (2,-1).
  BasisPtr dep = make_basis({1.0, 2.0}, false);
  EXPECT_EQ(mean_value(APSeries(dep, {{{0, 0}, 1.0}, {{2, -1}, 3.0}, {{2, 0}, 1.0}})), Complex(4.0, 0.0));
}

TEST(Evaluate, Examples) {
  BasisPtr b = b12();
  EXPECT_EQ(evaluate(APSeries::constant(b, {0.5, -2.0}), 123.4), Complex(0.5, -2.0));
  Complex v = evaluate(APSeries::monomial(b, {1, 0}, 1.0), std::numbers::pi);
  EXPECT_NEAR(v.real(), -1.0, 1e-15);
  EXPECT_NEAR(v.imag(), 0.0, 1e-15);

  std::mt19937_64 rng(3);
  APSeries f = random_series(b, 8, 5, 1.0, rng);
  std::uniform_real_distribution<double> x(-1e3, 1e3);
  const double bound = a_norm(f) * (1 + 1e-14);
  for (int i = 0; i < 1000; ++i) EXPECT_LE(std::abs(evaluate(f, x(rng))), bound);
}

TEST(Sobolev, Examples) {
  BasisPtr b = b12();
  std::mt19937_64 rng(5);
  APSeries f = random_series(b, 6, 3, 1.0, rng);
  const std::vector<double> zero{0.0, 0.0}, s10{1.0, 0.0}, s11{1.0, 1.0};
  EXPECT_NEAR(sobolev_norm(f, zero), l2_norm(f), 1e-15);
  EXPECT_NEAR(sobolev_norm(APSeries::monomial(b, {1, 0}, 1.0), s10), std::sqrt(2.0), 1e-15);
  EXPECT_THROW(sobolev_norm(f, std::vector<double>{1.0}), DimensionError);

  for (int trial = 0; trial < 50; ++trial) {
    APSeries g = random_series(b, 10, 6, 1.0, rng);
    double cs = 0.0;
    for (const Term& t : g.terms()) cs += 1.0 / ((1.0 + t.freq[0] * t.freq[0]) * (1.0 + t.freq[1] * t.freq[1]));
    EXPECT_LE(a_norm(g), std::sqrt(cs) * sobolev_norm(g, s11) * (1 + 1e-12));
  }
}

TEST(Multiply, Examples) {
  BasisPtr b = b12();
  Product p = multiply(APSeries::monomial(b, {1, 0}, 1.0), APSeries::monomial(b, {0, 1}, 1.0));
  EXPECT_EQ(p.series, APSeries::monomial(b, {1, 1}, 1.0));
  EXPECT_EQ(p.discarded_mass, 0.0);

  BasisPtr b1 = make_basis({1.0});
  APSeries one_plus(b1, {{{0}, 1.0}, {{1}, 1.0}});
  EXPECT_EQ(multiply(one_plus, one_plus).series, APSeries(b1, {{{0}, 1.0}, {{1}, 2.0}, {{2}, 1.0}}));
}

TEST(Multiply, PointwiseAgreement) {
  BasisPtr b = b12();
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> x(-50.0, 50.0);
  for (int trial = 0; trial < 20; ++trial) {
    APSeries f = random_series(b, 5, 3, 1.0, rng);
    APSeries g = random_series(b, 5, 3, 1.0, rng);
    APSeries fg = multiply(f, g).series;
    for (int i = 0; i < 64; ++i) {
      double xi = x(rng);
      EXPECT_LE(std::abs(pointwise(fg, xi) - pointwise(f, xi) * pointwise(g, xi)), 1e-12);
    }
  }
}

TEST(Multiply, YoungBound) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 100; ++trial) {
    BasisPtr b = make_basis({1.0, kSqrt2, std::numbers::sqrt3});
    APSeries f = random_series(b, 1 + trial % 20, 2, 3.0, rng);
    APSeries g = random_series(b, 1 + (trial * 7) % 20, 2, 3.0, rng);
    const double af = a_norm(f), ag = a_norm(g);
    EXPECT_LE(a_norm(multiply(f, g).series), af * ag + 1e-12 * (1 + af * ag));
  }
}

TEST(Multiply, ConjugationCompatibilityIsExact) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    APSeries f = random_series(b12(), 30, 4, 1.0, rng);
    APSeries g = random_series(b12(), 30, 4, 1.0, rng);
    EXPECT_TRUE(bitwise_equal(conjugate(multiply(f, g).series),
                              multiply(conjugate(f), conjugate(g)).series));
  }
}

TEST(Multiply, SerialAndParallelKernelsAgreeBitwise) {
  std::mt19937_64 rng(29);
  BasisPtr b = make_basis({1.0, kSqrt2, std::numbers::sqrt3});
  const TruncationPolicy none = TruncationPolicy::none();
  TruncationPolicy cut;
  cut.threshold = 1e-3;
  cut.max_support = 300;
  for (int trial = 0; trial < 6; ++trial) {
    APSeries f = random_series(b, 40 + 30 * trial, 5, 1.0, rng);
    APSeries g = random_series(b, 60 + 20 * trial, 5, 1.0, rng);
    for (const TruncationPolicy& t : {none, cut}) {
      Product ref = kernels::multiply_serial(f, g, t);
      for (int threads : {1, 2, 3, 4}) {
        omp_set_num_threads(threads);
        Product par = kernels::multiply_parallel(f, g, t);
        EXPECT_TRUE(bitwise_equal(par.series, ref.series)) << "threads " << threads;
        EXPECT_EQ(par.discarded_mass, ref.discarded_mass);
      }
    }
  }
  omp_set_num_threads(1);
}

TEST(Multiply, WideFrequenciesUseGenericPath) {
  // Components this large do not fit the packed 64-bit key.
  std::mt19937_64 rng(37);
  std::vector<double> gens;
  for (int j = 0; j < 8; ++j) gens.push_back(std::sqrt(2.0 + j));
  BasisPtr b = make_basis(gens);
  APSeries f = random_series(b, 80, 100000, 1.0, rng);
  APSeries g = random_series(b, 80, 100000, 1.0, rng);
  APSeries f2 = add(f, conjugate(f));
  EXPECT_TRUE(bitwise_equal(kernels::multiply_parallel(f2, g, {}).series,
                            kernels::multiply_serial(f2, g, {}).series));
  EXPECT_TRUE(bitwise_equal(kernels::multiply_parallel(f2, f2, {}).series,
                            kernels::multiply_serial(f2, f2, {}).series));
}

TEST(Multiply, Deterministic) {
  std::mt19937_64 rng(31);
  APSeries f = random_series(b12(), 100, 8, 1.0, rng);
  APSeries g = random_series(b12(), 100, 8, 1.0, rng);
  EXPECT_TRUE(bitwise_equal(multiply(f, g).series, multiply(f, g).series));
}

TEST(Multiply, Truncation) {
  BasisPtr b1 = make_basis({1.0});
  APSeries f(b1, {{{0}, 1.0}, {{1}, 0.01}});
  // f^2 = 1 + 0.02 e^{ix} + 1e-4 e^{2ix}
  TruncationPolicy t;
  t.threshold = 1e-3;
  Product p = multiply(f, f, t);
  EXPECT_EQ(p.series.size(), 2u);
  EXPECT_NEAR(p.discarded_mass, 1e-4, 1e-18);

  TruncationPolicy cap;
  cap.max_support = 2;
  EXPECT_THROW(multiply(f, f, cap), CapacityError);
  cap.threshold = 1e-12;
  Product kept = multiply(f, f, cap);
  EXPECT_EQ(kept.series.size(), 2u);
  EXPECT_EQ(kept.series.coefficient({2}), Complex(0.0, 0.0));
}

TEST(ProjectToBox, RemovesOutsideMass) {
  BasisPtr b1 = make_basis({1.0});
  APSeries f(b1, {{{0}, 1.0}, {{2}, 0.5}, {{-3}, {0.0, 0.25}}});
  EXPECT_EQ(project_to_box(f, 2), 0.25);
  EXPECT_EQ(f.size(), 2u);
}

}  // namespace

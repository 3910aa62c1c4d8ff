#include <cmath>
#include <cstring>
#include <numbers>
#include <random>

#include <gtest/gtest.h>
#include <omp.h>

#include "apnls/core/basis.hpp"
#include "apnls/core/convolution.hpp"
#include "apnls/core/errors.hpp"
#include "apnls/oracle/grid_mean.hpp"
#include "apnls/oracle/ode_reference.hpp"
#include "apnls/schrodinger/propagator.hpp"
#include "support.hpp"

namespace {

using namespace apnls;
using apnls::testing::random_series;

const Complex I(0.0, 1.0);

BasisPtr b1() { return make_basis({1.0}); }
BasisPtr b12() { return make_basis({1.0, std::numbers::sqrt2}); }

TEST(GridMean, Examples) {
  EXPECT_EQ(oracle::grid_mean(APSeries::constant(b1(), 2.0), {10.0, 1000}), Complex(2.0, 0.0));
  const double L = 1e4;
  Complex m = oracle::grid_mean(APSeries::monomial(b1(), {1}, 1.0), {L, 1000000});
  EXPECT_LE(std::abs(m), 1e-4);
  EXPECT_NEAR(std::abs(m), std::abs(std::sin(L) / L), 1e-7);

  APSeries f(b12(), {{{1, 0}, 1.0}, {{0, 1}, 1.0}});
  EXPECT_NEAR(oracle::grid_moments(f, {L, 1000000}).mean_abs2, 2.0, 1e-2);
}

TEST(GridMean, WindowValidation) {
  EXPECT_THROW(oracle::grid_mean(APSeries::constant(b1(), 1.0), {0.0, 10}), DomainError);
  EXPECT_THROW(oracle::grid_mean(APSeries::constant(b1(), 1.0), {1.0, 1}), DomainError);
}

TEST(GridMean, BlockedMatchesSerialAcrossThreadCounts) {
  std::mt19937_64 rng(83);
  APSeries f = random_series(b12(), 6, 3, 1.0, rng);
  oracle::GridWindow w{500.0, 200001};
  oracle::GridMoments ref = oracle::grid_moments(f, w);
  oracle::GridMoments serial = oracle::grid_moments_serial(f, w);
  EXPECT_LE(std::abs(ref.mean - serial.mean), 1e-12);
  EXPECT_NEAR(ref.mean_abs2, serial.mean_abs2, 1e-12);
  for (int threads : {1, 2, 3}) {
    omp_set_num_threads(threads);
    oracle::GridMoments m = oracle::grid_moments(f, w);
    EXPECT_EQ(std::memcmp(&m.mean, &ref.mean, sizeof(Complex)), 0);
    EXPECT_EQ(m.mean_abs2, ref.mean_abs2);
  }
  omp_set_num_threads(1);
}

TEST(GridMean, ParsevalAndMeanPositivity) {
  // Real-valued f: the window average of |f|^2 settles at l2_norm^2 > 0.
  std::mt19937_64 rng(89);
  for (int trial = 0; trial < 5; ++trial) {
    APSeries g = random_series(b12(), 4, 2, 1.0, rng);
    APSeries f = add(g, conjugate(g));
    const double l2 = l2_norm(f);
    ASSERT_GT(l2, 0.0);
    for (double L : {1e3, 1e4}) {
      double m2 = oracle::grid_moments(f, {L, static_cast<std::size_t>(100 * L)}).mean_abs2;
      EXPECT_GT(m2, 0.0);
      if (L == 1e4) {
        EXPECT_NEAR(m2, l2 * l2, 1e-2 * l2 * l2);
      }
    }
  }
}

TEST(OdeReference, LinearMatchesPropagate) {
  std::mt19937_64 rng(97);
  APSeries f = random_series(b12(), 5, 2, 1.0, rng);
  std::vector<FreqVector> support = oracle::box_support(2, 2);
  SolutionTrace tr = oracle::ode_reference(f, NonlinearitySpec::power_modulus(2, 0.0), support, 3.0, 1e-11, 30);
  ASSERT_EQ(tr.size(), 31u);
  for (const TraceSample& s : tr.samples) {
    EXPECT_LE(a_norm(subtract(*s.snapshot, propagate(f, s.t))), 1e-8) << s.t;
  }
}

TEST(OdeReference, ConstantDataClosedForm) {
  SolutionTrace tr = oracle::ode_reference(APSeries::constant(b1(), 1.0), NonlinearitySpec::power_modulus(2, I),
                                           {FreqVector{0}}, 0.9, 1e-12, 90);
  for (const TraceSample& s : tr.samples) {
    EXPECT_LE(std::abs(s.zero_mode - 1.0 / (1.0 - s.t)), 1e-9) << s.t;
  }
}

TEST(OdeReference, SelfConvergence) {
  APSeries f(b12(), {{{1, 0}, 0.2}, {{0, 1}, {0.0, 0.15}}});
  NonlinearitySpec spec{3, 2, 1.0, false};
  std::vector<FreqVector> support = oracle::box_support(2, 3);
  const double tol = 1e-8;
  SolutionTrace a = oracle::ode_reference(f, spec, support, 2.0, tol, 20);
  SolutionTrace b = oracle::ode_reference(f, spec, support, 2.0, tol / 2, 20);
  EXPECT_LE(sup_l1_distance(a, b), 10 * tol);
}

TEST(OdeReference, RejectsDataOutsideSupport) {
  APSeries f(b1(), {{{0}, 1.0}, {{3}, 1.0}});
  try {
    oracle::ode_reference(f, NonlinearitySpec::power_modulus(2, I), oracle::box_support(1, 2), 1.0, 1e-8);
    FAIL();
  } catch (const oracle::SupportClosureError& e) {
    ASSERT_EQ(e.escaping().size(), 1u);
    EXPECT_EQ(e.escaping()[0], FreqVector{3});
  }
}

TEST(OdeReference, NonlinearityAgreesWithConvolution) {
  // Single tiny step of the oracle vs library: the dense-box convolution and
  // the sparse one must produce the same vector field.
  std::mt19937_64 rng(101);
  APSeries f = random_series(b12(), 4, 1, 0.3, rng);
  NonlinearitySpec spec{2, 1, Complex(0.0, 1.0), true};
  std::vector<FreqVector> support = oracle::box_support(2, 2);
  const double dt = 1e-6;
  SolutionTrace tr = oracle::ode_reference(f, spec, support, dt, 1e-14, 1);
  APSeries drift = subtract(*tr.back().snapshot, propagate(f, dt));
  APSeries expected = scale(multiply(f, conjugate(f)).series, Complex(0.0, -1.0) * spec.lambda * dt);
  project_to_box(expected, 2);
  EXPECT_LE(a_norm(subtract(drift, expected)), 1e-10);
}

}  // namespace

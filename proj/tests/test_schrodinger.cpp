#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <gtest/gtest.h>

#include "apnls/core/basis.hpp"
#include "apnls/core/errors.hpp"
#include "apnls/schrodinger/propagator.hpp"
#include "support.hpp"

namespace {

using namespace apnls;
using apnls::testing::max_coeff_diff;
using apnls::testing::pointwise;
using apnls::testing::random_series;

const Complex I(0.0, 1.0);

BasisPtr b12() { return make_basis({1.0, std::numbers::sqrt2}); }

TEST(Propagate, IdentityAtZero) {
  std::mt19937_64 rng(1);
  APSeries f = random_series(b12(), 10, 4, 1.0, rng);
  EXPECT_TRUE(apnls::testing::bitwise_equal(propagate(f, 0.0), f));
}

TEST(Propagate, FullPeriodPhase) {
  BasisPtr b = make_basis({std::numbers::sqrt2});
  const Complex c(0.3, -0.7);
  APSeries g = propagate(APSeries::monomial(b, {1}, c), std::numbers::pi);
  EXPECT_LE(std::abs(g.coefficient({1}) - c), 1e-14);
}

TEST(Propagate, GroupLawAndNormPreservation) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> time(-5.0, 5.0);
  for (int trial = 0; trial < 200; ++trial) {
    APSeries f = random_series(b12(), 8, 4, 1.0, rng);
    const double s = time(rng), t = time(rng);
    EXPECT_LE(max_coeff_diff(propagate(propagate(f, s), t), propagate(f, s + t)), 1e-12);
    APSeries g = propagate(f, t);
    EXPECT_NEAR(a_norm(g), a_norm(f), 1e-12);
    EXPECT_NEAR(l2_norm(g), l2_norm(f), 1e-12 * l2_norm(f));
  }
}

TEST(Propagate, SolvesFreeEquationDistributionally) {
  // int int S(t)f (-i phi_t + phi_xx) dx dt = i int f(x) phi(0, x) dx
  // for phi(t, x) = (1 - t^2)^4 (1 - x^2)^4 on [0, 1] x [-1, 1].
  std::mt19937_64 rng(3);
  APSeries f = random_series(make_basis({1.0, std::numbers::sqrt2}), 3, 2, 1.0, rng);
  using Gauss = boost::math::quadrature::gauss<double, 40>;
  auto bump = [](double y) { return std::pow(1 - y * y, 4); };
  auto bump_d = [](double y) { return -8 * y * std::pow(1 - y * y, 3); };
  auto bump_dd = [](double y) { return -8 * std::pow(1 - y * y, 3) + 48 * y * y * std::pow(1 - y * y, 2); };

  auto inner = [&](double t) {
    APSeries u = propagate(f, t);
    auto re = [&](double x) {
      Complex test = -I * bump_d(t) * bump(x) + bump(t) * bump_dd(x);
      return (pointwise(u, x) * test).real();
    };
    auto im = [&](double x) {
      Complex test = -I * bump_d(t) * bump(x) + bump(t) * bump_dd(x);
      return (pointwise(u, x) * test).imag();
    };
    return Complex(Gauss::integrate(re, -1.0, 1.0), Gauss::integrate(im, -1.0, 1.0));
  };
  Complex lhs(Gauss::integrate([&](double t) { return inner(t).real(); }, 0.0, 1.0),
              Gauss::integrate([&](double t) { return inner(t).imag(); }, 0.0, 1.0));
  Complex rhs = I * Complex(Gauss::integrate([&](double x) { return (pointwise(f, x) * bump(x)).real(); }, -1.0, 1.0),
                            Gauss::integrate([&](double x) { return (pointwise(f, x) * bump(x)).imag(); }, -1.0, 1.0));
  EXPECT_LE(std::abs(lhs - rhs), 1e-3);
}

TEST(PhaseTable, CachesBySupport) {
  std::mt19937_64 rng(4);
  APSeries f = random_series(b12(), 6, 3, 1.0, rng);
  PhaseTable table;
  APSeries g = propagate(f, 0.7, table);
  EXPECT_EQ(table.rebuilds(), 1u);
  EXPECT_EQ(table.size(), f.size());
  for (std::size_t k = 0; k < f.size(); ++k) {
    const double w = frequency_of(f.basis(), f.terms()[k].freq);
    EXPECT_NEAR(table.squared_frequency(k), w * w, 1e-15 * std::max(1.0, w * w));
  }
  // Same support, different coefficients: the table is reused.
  APSeries h = propagate(scale(f, 2.0), -0.3, table);
  EXPECT_EQ(table.rebuilds(), 1u);
  EXPECT_TRUE(apnls::testing::bitwise_equal(g, propagate(f, 0.7)));
  EXPECT_TRUE(apnls::testing::bitwise_equal(h, propagate(scale(f, 2.0), -0.3)));
  APSeries other = add(f, APSeries::monomial(b12(), {7, 7}, 1.0));
  EXPECT_FALSE(table.matches(other));
  propagate(other, 1.0, table);
  EXPECT_EQ(table.rebuilds(), 2u);
}

TEST(Duhamel, Examples) {
  BasisPtr b = make_basis({1.0});
  UniformGrid grid{1.0 / 128, 129};
  std::vector<APSeries> zero(grid.points, APSeries(b));
  EXPECT_TRUE(duhamel(zero, grid, 1.0).empty());

  std::vector<APSeries> one(grid.points, APSeries::constant(b, 1.0));
  Complex d0 = duhamel(one, grid, 1.0).coefficient({0});
  EXPECT_NEAR(d0.real(), 0.0, 1e-15);
  EXPECT_NEAR(d0.imag(), -1.0, 1e-14);

  std::vector<APSeries> osc(grid.points, APSeries::monomial(b, {1}, 1.0));
  const double t = 1.0;
  Complex exact = -I * std::exp(-I * t) * (std::exp(I * t) - 1.0) / I;
  EXPECT_LE(std::abs(duhamel(osc, grid, t).coefficient({1}) - exact), 1e-4);

  EXPECT_THROW(duhamel(osc, grid, 0.5 + 1e-3), DomainError);
  EXPECT_THROW(duhamel(osc, grid, 2.0), DomainError);
}

TEST(Duhamel, NormContract) {
  std::mt19937_64 rng(5);
  UniformGrid grid{0.01, 101};
  std::vector<APSeries> F;
  double sup = 0.0;
  for (std::size_t i = 0; i < grid.points; ++i) {
    F.push_back(random_series(b12(), 4, 2, 1.0, rng));
    sup = std::max(sup, a_norm(F.back()));
  }
  for (std::size_t i = 0; i < grid.points; i += 10) {
    EXPECT_LE(a_norm(duhamel(F, grid, i)), grid.time(i) * sup + 1e-14);
  }
}

TEST(Duhamel, CumulativeFormMatchesDirect) {
  std::mt19937_64 rng(6);
  UniformGrid grid{0.02, 60};
  std::vector<APSeries> F;
  for (std::size_t i = 0; i < grid.points; ++i) F.push_back(random_series(b12(), 5, 2, 1.0, rng));
  std::vector<APSeries> all = duhamel_all(F, grid);
  ASSERT_EQ(all.size(), grid.points);
  for (std::size_t i = 0; i < grid.points; ++i) {
    EXPECT_LE(max_coeff_diff(all[i], duhamel(F, grid, i)), 1e-13) << i;
  }
}

}  // namespace

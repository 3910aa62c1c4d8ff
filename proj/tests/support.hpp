#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstring>
#include <cstdint>
#include <random>
#include <vector>

#include "apnls/core/series.hpp"

namespace apnls::testing {

inline APSeries random_series(const BasisPtr& basis, std::size_t terms, int radius, double amplitude,
                              std::mt19937_64& rng) {
  std::uniform_int_distribution<int> key(-radius, radius);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Term> out;
  for (std::size_t i = 0; i < terms; ++i) {
    FreqVector n = basis->zero();
    for (std::size_t j = 0; j < basis->dim(); ++j) n[j] = key(rng);
    out.push_back({n, amplitude * Complex(u(rng), u(rng))});
  }
  return APSeries(basis, std::move(out));
}

// Rescaled so that a_norm equals target.
inline APSeries with_a_norm(const APSeries& f, double target) {
  double s = 0.0;
  for (const Term& t : f.terms()) s += std::abs(t.coeff);
  return scale(f, Complex(target / s, 0.0));
}

// Pointwise value from the generator list, without frequency_of/evaluate.
inline Complex pointwise(const APSeries& f, double x) {
  const auto& w = f.basis().generators();
  Complex sum{0.0, 0.0};
  for (const Term& t : f.terms()) {
    double xi = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) xi += w[j] * t.freq[j];
    sum += t.coeff * std::exp(Complex(0.0, xi * x));
  }
  return sum;
}

// Largest coefficient-wise difference over the union of supports.
inline double max_coeff_diff(const APSeries& a, const APSeries& b) {
  double m = 0.0;
  for (const Term& t : a.terms()) m = std::max(m, std::abs(t.coeff - b.coefficient(t.freq)));
  for (const Term& t : b.terms()) m = std::max(m, std::abs(t.coeff - a.coefficient(t.freq)));
  return m;
}

inline bool bitwise_equal(const APSeries& a, const APSeries& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Term& x = a.terms()[i];
    const Term& y = b.terms()[i];
    if (!(x.freq == y.freq)) return false;
    if (std::memcmp(&x.coeff, &y.coeff, sizeof(Complex)) != 0) return false;
  }
  return true;
}

}  // namespace apnls::testing

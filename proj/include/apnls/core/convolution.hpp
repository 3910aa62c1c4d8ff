#pragma once

#include <cstddef>
#include <limits>
#include <optional>

#include "apnls/core/series.hpp"

namespace apnls {

struct TruncationPolicy {
  // Product coefficients with |c| < threshold are dropped.
  double threshold = 0.0;
  // Upper bound on the support of any product. With threshold == 0 an
  // overflow is a CapacityError; otherwise the largest entries are kept.
  std::size_t max_support = std::numeric_limits<std::size_t>::max();
  // Galerkin window |n|_inf <= window_radius, applied to nonlinearity output
  // only (never inside multiply).
  std::optional<int> window_radius;

  static TruncationPolicy none() { return {}; }
};

struct Product {
  APSeries series;
  // Exact l1 mass of the entries removed by truncation.
  double discarded_mass = 0.0;
};

// Convolution of coefficient sequences: result(m) = sum_n f(n) g(m - n).
//
// For each output m the contributions are accumulated in a fixed order:
// sorted by the negation-symmetric representative of d = n - (m - n), with the
// two contributions sharing a representative added together first. The order
// depends only on the frequencies, so the result is bit-identical for any
// thread count and conjugate(f * g) == conjugate(f) * conjugate(g) exactly.
//
// Uses the OpenMP kernel.
Product multiply(const APSeries& f, const APSeries& g,
                 const TruncationPolicy& trunc = TruncationPolicy::none());

// M(f conj(g)).
Complex inner_product(const APSeries& f, const APSeries& g);

namespace kernels {

// Straightforward map-based convolution; kept as the reference the parallel
// kernel is tested and benchmarked against. Same accumulation order, so the
// two agree bit for bit.
Product multiply_serial(const APSeries& f, const APSeries& g,
                        const TruncationPolicy& trunc);

// Bucketed OpenMP convolution.
Product multiply_parallel(const APSeries& f, const APSeries& g,
                          const TruncationPolicy& trunc);

}  // namespace kernels

}  // namespace apnls

#pragma once

#include <cstddef>

#include "apnls/core/series.hpp"

// Brute-force references. Nothing here is used by the solver, and nothing
// here calls the ap_core norms or evaluate(): series are summed pointwise
// with their own loop.
namespace apnls::oracle {

// Midpoint samples x_k = -L + (k + 1/2) 2L/N on [-L, L].
struct GridWindow {
  double half_width = 1.0;
  std::size_t samples = 2;

  void validate() const;
};

struct GridMoments {
  Complex mean{0.0, 0.0};  // (1/2L) int f
  double mean_abs2 = 0.0;  // (1/2L) int |f|^2
};

// Parallel over a fixed number of sample blocks; each block is summed in
// order, then the blocks in order, so the result does not depend on the
// thread count.
GridMoments grid_moments(const APSeries& f, const GridWindow& w);

// Single sequential sum, kept as the reference for the blocked kernel.
GridMoments grid_moments_serial(const APSeries& f, const GridWindow& w);

inline Complex grid_mean(const APSeries& f, const GridWindow& w) { return grid_moments(f, w).mean; }

}  // namespace apnls::oracle

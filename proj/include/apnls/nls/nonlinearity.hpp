#pragma once

#include "apnls/core/convolution.hpp"
#include "apnls/core/series.hpp"

namespace apnls {

// N(u) = lambda * u^k * conj(u)^(p-k). With modulus = true this is
// lambda * |u|^p, which requires p even and k = p / 2.
struct NonlinearitySpec {
  int p = 2;
  int k = 1;
  Complex lambda{1.0, 0.0};
  bool modulus = false;

  static NonlinearitySpec power_modulus(int p, Complex lambda) {
    return {p, p / 2, lambda, true};
  }

  // Throws ConfigError naming the violated invariant.
  void validate() const;
};

struct NonlinearityResult {
  APSeries series;
  // l1 bound on everything truncation removed, carried through later factors.
  double discarded_mass = 0.0;
};

// Repeated multiply with trunc applied to every product; the window projection
// (if any) is applied to the final result.
NonlinearityResult nonlinearity(const APSeries& u, const NonlinearitySpec& spec,
                                const TruncationPolicy& trunc = TruncationPolicy::none());

// |u|^p for even p as u^(p/2) * conj(u^(p/2)); its zero coefficient is exactly
// real and non-negative.
APSeries modulus_power(const APSeries& u, int p);

}  // namespace apnls

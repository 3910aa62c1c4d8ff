#include "apnls/nls/nonlinearity.hpp"

#include <cmath>
#include <string>

#include "apnls/core/errors.hpp"

namespace apnls {

void NonlinearitySpec::validate() const {
  if (p < 1) throw ConfigError("nonlinearity: p must be a positive integer (got p=" + std::to_string(p) + ")");
  if (k < 0 || k > p) {
    throw ConfigError("nonlinearity: k must satisfy 0 <= k <= p (got k=" + std::to_string(k) +
                      ", p=" + std::to_string(p) + ")");
  }
  if (modulus && (p % 2 != 0 || 2 * k != p)) {
    throw ConfigError("nonlinearity: modulus mode requires p even and k = p/2 (got p=" +
                      std::to_string(p) + ", k=" + std::to_string(k) + ")");
  }
  if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag())) {
    throw ConfigError("nonlinearity: lambda must be finite");
  }
}

namespace {

struct Power {
  APSeries series;
  double error = 0.0;  // l1 bound on |exact - series|
};

// base^count by repeated right multiplication with base.
Power power(const APSeries& base, int count, const TruncationPolicy& trunc) {
  Power acc{base, 0.0};
  const double base_norm = a_norm(base);
  for (int r = 1; r < count; ++r) {
    Product prod = multiply(acc.series, base, trunc);
    acc.error = acc.error * base_norm + prod.discarded_mass;
    acc.series = std::move(prod.series);
  }
  return acc;
}

}  // namespace

NonlinearityResult nonlinearity(const APSeries& u, const NonlinearitySpec& spec,
                                const TruncationPolicy& trunc) {
  spec.validate();
  NonlinearityResult out{APSeries(u.basis_ptr()), 0.0};
  if (spec.lambda == Complex(0.0, 0.0) || u.empty()) return out;

  const int conj_count = spec.p - spec.k;
  Power result{APSeries(u.basis_ptr()), 0.0};
  if (spec.k > 0 && conj_count > 0) {
    Power a = power(u, spec.k, trunc);
    Power b = power(conjugate(u), conj_count, trunc);
    Product prod = multiply(a.series, b.series, trunc);
    result.error = a.error * a_norm(b.series) + a_norm(a.series) * b.error + a.error * b.error +
                   prod.discarded_mass;
    result.series = std::move(prod.series);
  } else if (spec.k > 0) {
    result = power(u, spec.k, trunc);
  } else {
    result = power(conjugate(u), conj_count, trunc);
  }

  out.series = scale(result.series, spec.lambda);
  out.discarded_mass = result.error * std::abs(spec.lambda);
  if (trunc.window_radius) out.discarded_mass += project_to_box(out.series, *trunc.window_radius);
  return out;
}

APSeries modulus_power(const APSeries& u, int p) {
  if (p < 2 || p % 2 != 0) throw ConfigError("modulus_power needs an even p >= 2");
  Power a = power(u, p / 2, TruncationPolicy::none());
  return multiply(a.series, conjugate(a.series)).series;
}

}  // namespace apnls

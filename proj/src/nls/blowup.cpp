#include "apnls/nls/blowup.hpp"

#include <cmath>

#include "apnls/core/errors.hpp"

namespace apnls {

std::string to_string(BlowupClass c) {
  switch (c) {
    case BlowupClass::ForwardFinite: return "ForwardFinite";
    case BlowupClass::BackwardFinite: return "BackwardFinite";
    case BlowupClass::BothTests: return "BothTests";
    case BlowupClass::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

BlowupClassification classify_blowup(Complex lambda, const APSeries& f) {
  BlowupClassification c;
  c.mean = mean_value(f);
  c.re_lambda_im_mean = lambda.real() * c.mean.imag();
  c.im_lambda_re_mean = lambda.imag() * c.mean.real();
  c.forward = c.re_lambda_im_mean < 0.0 || c.im_lambda_re_mean > 0.0;
  c.backward = c.re_lambda_im_mean > 0.0 || c.im_lambda_re_mean < 0.0;
  if (c.forward && c.backward) {
    c.kind = BlowupClass::BothTests;
  } else if (c.forward) {
    c.kind = BlowupClass::ForwardFinite;
  } else if (c.backward) {
    c.kind = BlowupClass::BackwardFinite;
  }
  return c;
}

std::vector<Complex> cumulative_integral(const std::vector<Complex>& v, double h,
                                         QuadratureRule rule) {
  std::vector<Complex> out(v.size(), Complex(0.0, 0.0));
  Complex running{0.0, 0.0};
  for (std::size_t m = 1; m < v.size(); ++m) {
    running += 0.5 * h * (v[m - 1] + v[m]);
    out[m] = running;
    if (rule == QuadratureRule::Gregory && m >= 3) {
      const Complex d1 = v[1] - v[0];
      const Complex d2 = v[2] - 2.0 * v[1] + v[0];
      const Complex d3 = v[3] - 3.0 * v[2] + 3.0 * v[1] - v[0];
      const Complex b1 = v[m] - v[m - 1];
      const Complex b2 = v[m] - 2.0 * v[m - 1] + v[m - 2];
      const Complex b3 = v[m] - 3.0 * v[m - 1] + 3.0 * v[m - 2] - v[m - 3];
      out[m] += -h / 12.0 * (b1 - d1) - h / 24.0 * (b2 + d2) - 19.0 * h / 720.0 * (b3 - d3);
    }
  }
  return out;
}

ZeroModeResidual zero_mode_residual(const SolutionTrace& trace, const NonlinearitySpec& spec,
                                    QuadratureRule rule) {
  spec.validate();
  ZeroModeResidual r;
  if (trace.empty()) return r;
  const std::size_t n = trace.size();
  for (const TraceSample& s : trace.samples) {
    if (!s.snapshot) throw DomainError("zero_mode_residual needs a snapshot at every sample");
  }
  const double h = n > 1 ? trace.samples[1].t - trace.samples[0].t : 0.0;
  for (std::size_t k = 1; k < n; ++k) {
    double hk = trace.samples[k].t - trace.samples[k - 1].t;
    if (std::abs(hk - h) > 1e-9 * std::abs(h)) {
      throw DomainError("zero_mode_residual needs uniformly spaced samples");
    }
  }

  r.mean_power.reserve(n);
  NonlinearitySpec unit = spec;
  unit.lambda = Complex(1.0, 0.0);
  for (const TraceSample& s : trace.samples) {
    Complex m = spec.modulus ? mean_value(modulus_power(*s.snapshot, spec.p))
                             : mean_value(nonlinearity(*s.snapshot, unit).series);
    if (spec.modulus && !(m.real() >= 0.0 && m.imag() == 0.0)) r.nonnegative = false;
    r.mean_power.push_back(m);
  }
  r.running_integral = cumulative_integral(r.mean_power, h, rule);

  const Complex initial = trace.samples.front().zero_mode;
  const Complex i_lambda = Complex(0.0, 1.0) * spec.lambda;
  for (std::size_t k = 0; k < n; ++k) {
    Complex res = trace.samples[k].zero_mode - initial + i_lambda * r.running_integral[k];
    r.max_residual = std::max(r.max_residual, std::abs(res));
  }
  return r;
}

std::optional<double> riccati_bound(const APSeries& f, Complex lambda, int p) {
  const Complex m = mean_value(f);
  if (p < 2 || lambda.real() != 0.0 || !(lambda.imag() > 0.0) || !(m.real() > 0.0)) {
    return std::nullopt;
  }
  return std::pow(m.real(), 1.0 - p) / (std::abs(lambda) * (p - 1));
}

}  // namespace apnls

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "apnls/core/series.hpp"
#include "apnls/nls/nonlinearity.hpp"
#include "apnls/nls/trace.hpp"

namespace apnls {

enum class BlowupClass { ForwardFinite, BackwardFinite, BothTests, Inconclusive };

std::string to_string(BlowupClass c);

struct BlowupClassification {
  BlowupClass kind = BlowupClass::Inconclusive;
  bool forward = false;   // Re l * Im m < 0  or  Im l * Re m > 0
  bool backward = false;  // Re l * Im m > 0  or  Im l * Re m < 0
  Complex mean{0.0, 0.0};
  double re_lambda_im_mean = 0.0;
  double im_lambda_re_mean = 0.0;
};

// Sign test on lambda and the mean value of the data, exact comparisons with
// zero. Meaningful for N = lambda |u|^p with p even.
BlowupClassification classify_blowup(Complex lambda, const APSeries& f);

enum class QuadratureRule { Trapezoid, Gregory };

struct ZeroModeResidual {
  double max_residual = 0.0;
  std::vector<Complex> mean_power;        // M(u^k conj(u)^(p-k)) per sample
  std::vector<Complex> running_integral;  // int_0^t of mean_power
  bool nonnegative = true;                // modulus mode: M(|u|^p) >= 0 everywhere
};

// max_t |u^(t,0) - f^(0) + i lambda int_0^t M(u^k conj(u)^(p-k))|. The zero
// mode carries no linear phase, so this vanishes for exact solutions. Needs a
// snapshot at every sample and, for Gregory, uniform spacing.
ZeroModeResidual zero_mode_residual(const SolutionTrace& trace, const NonlinearitySpec& spec,
                                    QuadratureRule rule = QuadratureRule::Gregory);

// Cumulative integral of uniformly spaced samples. Gregory adds third-order
// endpoint corrections to the trapezoid once four samples are available.
std::vector<Complex> cumulative_integral(const std::vector<Complex>& values, double step,
                                         QuadratureRule rule);

// Blow-up time (Re m)^(1-p) / (|lambda| (p-1)) of x' = |lambda| x^p,
// x(0) = Re M(f). Only for lambda = i|lambda|, Re M(f) > 0, p >= 2; a
// diagnostic scale, not a bound for the PDE.
std::optional<double> riccati_bound(const APSeries& f, Complex lambda, int p);

}  // namespace apnls

#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "apnls/core/convolution.hpp"
#include "apnls/nls/nonlinearity.hpp"
#include "apnls/nls/trace.hpp"

namespace apnls {

struct PicardConfig {
  int max_iters = 100;
  double tol = 1e-12;       // sup over grid of the l1 step between iterates
  std::size_t grid = 256;   // M; the grid has M + 1 points
};

struct StepperConfig {
  double dt = 1e-3;
  std::size_t max_steps = 100000;
  double blowup_norm_threshold = 1e6;
  std::size_t snapshot_stride = 1;
};

struct SolverConfig {
  TruncationPolicy trunc;
  PicardConfig picard;
  StepperConfig stepper;
  double theta = 0.9;  // fraction of the certified window, in (0, 1]

  void validate() const;
};

// theta * min(2^-p ||f||^(1-p), 1 / (2 L)) with L = p |lambda| (2||f||)^(p-1)
// the Lipschitz constant of N on the ball of radius 2||f||. On this window the
// Duhamel map sends the ball into itself and contracts by at least 1/2.
// +infinity for f = 0.
double certified_window(const APSeries& f, const NonlinearitySpec& spec, double theta);

struct PicardResult {
  SolutionTrace trace;
  double window = 0.0;
  int iterations = 0;
  // ratios[j - 1] = |u^{j+1} - u^j| / |u^j - u^{j-1}|, sup over the grid.
  std::vector<double> ratios;
  // Largest a_norm over the grid divided by 2 a_norm(f), per iterate.
  std::vector<double> ball_fill;
};

// Fixed point of u -> S(t) f - i int_0^t S(t - t') N(u(t')) dt' on M + 1
// uniform points of [0, certified_window], trapezoid in time, starting from
// S(t) f. Throws ContractionFailure if the tolerance is not reached or an
// iterate leaves the ball of radius 2 a_norm(f) + tol.
PicardResult picard_solve(const APSeries& f, const NonlinearitySpec& spec, const SolverConfig& cfg);

enum class HaltReason { NormThreshold, MaxSteps, AccuracyAbort, NonFinite };

std::string to_string(HaltReason reason);

struct StepResult {
  SolutionTrace trace;
  HaltReason halt = HaltReason::MaxSteps;
  double halt_time = 0.0;
  std::size_t steps = 0;
};

// Classical RK4 in the interaction picture: the linear phase is applied
// exactly through propagate, the stepper only sees the rotated nonlinearity.
// Halts when a_norm exceeds the threshold, after max_steps, when cumulative
// discarded mass exceeds 10% of a_norm (accuracy abort) or on non-finite
// values.
StepResult step_solve(const APSeries& f, const NonlinearitySpec& spec, const SolverConfig& cfg);

// Solves toward negative time through v(t) = conj(u(-t)), which satisfies the
// same equation with lambda -> conj(lambda) and k -> p - k. The returned trace is
// mapped back (times -t, snapshots conjugated) and ordered by increasing time;
// halt_time is negative.
StepResult step_solve_backward(const APSeries& f, const NonlinearitySpec& spec,
                               const SolverConfig& cfg);

}  // namespace apnls

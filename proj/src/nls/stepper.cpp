#include <algorithm>
#include <cmath>

#include "apnls/core/errors.hpp"
#include "apnls/nls/solver.hpp"
#include "apnls/schrodinger/propagator.hpp"

namespace apnls {

std::string to_string(HaltReason reason) {
  switch (reason) {
    case HaltReason::NormThreshold: return "norm_threshold";
    case HaltReason::MaxSteps: return "max_steps";
    case HaltReason::AccuracyAbort: return "accuracy_abort";
    case HaltReason::NonFinite: return "non_finite";
  }
  return "unknown";
}

namespace {

const Complex kMinusI{0.0, -1.0};

struct Stage {
  APSeries slope;
  double dropped;
};

// Right-hand side in the frame rotated back to the start of the step:
// w' = -i S(-s) N(S(s) w).
Stage rotated_rhs(const APSeries& w, double s, const NonlinearitySpec& spec,
                  const TruncationPolicy& trunc) {
  NonlinearityResult n = nonlinearity(propagate(w, s), spec, trunc);
  return {scale(propagate(n.series, -s), kMinusI), n.discarded_mass};
}

APSeries axpy(const APSeries& y, double a, const APSeries& x) { return add(y, scale(x, a)); }

}  // namespace

StepResult step_solve(const APSeries& f, const NonlinearitySpec& spec, const SolverConfig& cfg) {
  spec.validate();
  cfg.validate();
  const StepperConfig& sc = cfg.stepper;
  if (cfg.trunc.window_radius) {
    for (const Term& t : f.terms()) {
      if (t.freq.max_norm() > *cfg.trunc.window_radius) {
        throw DomainError("initial data mode " + t.freq.to_string() + " lies outside the window");
      }
    }
  }

  StepResult result;
  APSeries u = f;
  double discarded = 0.0;
  result.trace.record(0.0, u, 0.0, 0);
  const double h = sc.dt;

  for (std::size_t step = 1; step <= sc.max_steps; ++step) {
    Stage k1 = rotated_rhs(u, 0.0, spec, cfg.trunc);
    Stage k2 = rotated_rhs(axpy(u, 0.5 * h, k1.slope), 0.5 * h, spec, cfg.trunc);
    Stage k3 = rotated_rhs(axpy(u, 0.5 * h, k2.slope), 0.5 * h, spec, cfg.trunc);
    Stage k4 = rotated_rhs(axpy(u, h, k3.slope), h, spec, cfg.trunc);

    APSeries incr = add(add(k1.slope, scale(k2.slope, 2.0)), add(scale(k3.slope, 2.0), k4.slope));
    u = propagate(axpy(u, h / 6.0, incr), h);
    discarded += h / 6.0 * (k1.dropped + 2.0 * k2.dropped + 2.0 * k3.dropped + k4.dropped);

    const double t = static_cast<double>(step) * h;
    const double norm = a_norm(u);
    bool halt = true;
    if (!std::isfinite(norm)) {
      result.halt = HaltReason::NonFinite;
    } else if (norm > sc.blowup_norm_threshold) {
      result.halt = HaltReason::NormThreshold;
    } else if (discarded > 0.1 * norm) {
      result.halt = HaltReason::AccuracyAbort;
    } else if (step == sc.max_steps) {
      result.halt = HaltReason::MaxSteps;
    } else {
      halt = false;
    }
    result.trace.record(t, u, discarded, 0, halt || step % sc.snapshot_stride == 0);
    result.steps = step;
    result.halt_time = t;
    if (halt) break;
  }
  return result;
}

StepResult step_solve_backward(const APSeries& f, const NonlinearitySpec& spec,
                               const SolverConfig& cfg) {
  NonlinearitySpec reversed = spec;
  reversed.lambda = std::conj(spec.lambda);
  reversed.k = spec.p - spec.k;  // conj(u^k conj(u)^(p-k)) = v^(p-k) conj(v)^k
  StepResult forward = step_solve(conjugate(f), reversed, cfg);

  StepResult out;
  out.halt = forward.halt;
  out.halt_time = -forward.halt_time;
  out.steps = forward.steps;
  out.trace.samples.reserve(forward.trace.size());
  for (auto it = forward.trace.samples.rbegin(); it != forward.trace.samples.rend(); ++it) {
    TraceSample s = *it;
    s.t = s.t == 0.0 ? 0.0 : -s.t;
    s.zero_mode = std::conj(s.zero_mode);
    if (s.snapshot) s.snapshot = conjugate(*s.snapshot);
    out.trace.samples.push_back(std::move(s));
  }
  return out;
}

}  // namespace apnls

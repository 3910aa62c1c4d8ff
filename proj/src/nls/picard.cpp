#include "apnls/nls/solver.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>

#include "apnls/core/errors.hpp"
#include "apnls/schrodinger/propagator.hpp"

namespace apnls {

void SolverConfig::validate() const {
  if (!(theta > 0.0 && theta <= 1.0)) throw ConfigError("solver: theta must lie in (0, 1]");
  if (!(trunc.threshold >= 0.0)) throw ConfigError("solver: truncation threshold must be >= 0");
  if (trunc.max_support == 0) throw ConfigError("solver: max_support must be positive");
  if (trunc.window_radius && *trunc.window_radius < 0) {
    throw ConfigError("solver: window_radius must be >= 0");
  }
  if (picard.max_iters < 1) throw ConfigError("solver: picard.max_iters must be >= 1");
  if (!(picard.tol > 0.0)) throw ConfigError("solver: picard.tol must be > 0");
  if (picard.grid < 1) throw ConfigError("solver: picard.grid must be >= 1");
  if (!(stepper.dt > 0.0) || !std::isfinite(stepper.dt)) throw ConfigError("solver: stepper.dt must be > 0");
  if (!(stepper.blowup_norm_threshold > 0.0)) {
    throw ConfigError("solver: stepper.blowup_norm_threshold must be > 0");
  }
  if (stepper.snapshot_stride < 1) throw ConfigError("solver: stepper.snapshot_stride must be >= 1");
}

double certified_window(const APSeries& f, const NonlinearitySpec& spec, double theta) {
  spec.validate();
  if (!(theta > 0.0 && theta <= 1.0)) throw DomainError("certified_window: theta must lie in (0, 1]");
  const double norm = a_norm(f);
  if (norm == 0.0) return std::numeric_limits<double>::infinity();
  const int p = spec.p;
  const double ball = std::pow(2.0, -p) * std::pow(norm, 1.0 - p);
  const double lipschitz = p * std::abs(spec.lambda) * std::pow(2.0 * norm, p - 1);
  const double contraction =
      lipschitz == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / (2.0 * lipschitz);
  return theta * std::min(ball, contraction);
}

PicardResult picard_solve(const APSeries& f, const NonlinearitySpec& spec, const SolverConfig& cfg) {
  spec.validate();
  cfg.validate();
  const std::size_t M = cfg.picard.grid;
  const double data_norm = a_norm(f);

  PicardResult result;
  result.window = certified_window(f, spec, cfg.theta);
  if (data_norm == 0.0) {
    // Trivial flow; report it on a unit horizon.
    for (std::size_t i = 0; i <= M; ++i) {
      result.trace.record(static_cast<double>(i) / static_cast<double>(M), f, 0.0, 0);
    }
    return result;
  }

  const UniformGrid grid{result.window / static_cast<double>(M), M + 1};
  std::vector<APSeries> free;
  free.reserve(grid.points);
  for (std::size_t i = 0; i < grid.points; ++i) free.push_back(propagate(f, grid.time(i)));

  std::vector<APSeries> u = free;
  std::vector<double> dropped(grid.points, 0.0);
  const double radius = 2.0 * data_norm + cfg.picard.tol;
  double previous_step = 0.0;
  bool converged = false;

  for (int iter = 1; iter <= cfg.picard.max_iters && !converged; ++iter) {
    std::vector<APSeries> forcing(grid.points, APSeries(f.basis_ptr()));
    std::vector<std::exception_ptr> errors(grid.points);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(grid.points); ++i) {
      try {
        NonlinearityResult n = nonlinearity(u[i], spec, cfg.trunc);
        forcing[i] = std::move(n.series);
        dropped[i] = n.discarded_mass;
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }

    std::vector<APSeries> duh = duhamel_all(forcing, grid);
    double step = 0.0;
    double largest = 0.0;
    for (std::size_t i = 0; i < grid.points; ++i) {
      APSeries next = add(free[i], duh[i]);
      step = std::max(step, a_norm(subtract(next, u[i])));
      largest = std::max(largest, a_norm(next));
      u[i] = std::move(next);
    }
    result.iterations = iter;
    result.ball_fill.push_back(largest / (2.0 * data_norm));
    if (iter >= 2) result.ratios.push_back(previous_step > 0.0 ? step / previous_step : 0.0);
    if (largest > radius) {
      throw ContractionFailure("Picard iterate " + std::to_string(iter) + " left the ball of radius 2||f||",
                               result.ratios);
    }
    previous_step = step;
    converged = step < cfg.picard.tol;
  }
  if (!converged) {
    throw ContractionFailure("Picard iteration did not reach tolerance in " +
                                 std::to_string(cfg.picard.max_iters) + " iterations",
                             result.ratios);
  }

  // Truncation inside the Duhamel integral contributes at most t * sup drop.
  double sup_drop = 0.0;
  for (std::size_t i = 0; i < grid.points; ++i) {
    sup_drop = std::max(sup_drop, dropped[i]);
    result.trace.record(grid.time(i), u[i], grid.time(i) * sup_drop, result.iterations);
  }
  return result;
}

}  // namespace apnls

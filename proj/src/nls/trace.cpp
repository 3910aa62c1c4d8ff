#include "apnls/nls/trace.hpp"

#include <algorithm>
#include <cmath>

#include "apnls/core/errors.hpp"

namespace apnls {

void SolutionTrace::record(double t, const APSeries& u, double discarded, int picard_iterations,
                           bool keep_snapshot) {
  TraceSample s;
  s.t = t;
  s.a_norm = a_norm(u);
  s.l2_norm = l2_norm(u);
  s.zero_mode = mean_value(u);
  s.discarded_mass = discarded;
  s.picard_iterations = picard_iterations;
  if (keep_snapshot) s.snapshot = u;
  samples.push_back(std::move(s));
}

bool SolutionTrace::consistent(double tol) const {
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const TraceSample& s = samples[k];
    if (k > 0 && !(s.t > samples[k - 1].t)) return false;
    if (!s.snapshot) continue;
    auto close = [tol](double a, double b) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); };
    if (!close(s.a_norm, a_norm(*s.snapshot)) || !close(s.l2_norm, l2_norm(*s.snapshot)) ||
        std::abs(s.zero_mode - mean_value(*s.snapshot)) > tol * std::max(1.0, std::abs(s.zero_mode))) {
      return false;
    }
  }
  return true;
}

double sup_l1_distance(const SolutionTrace& a, const SolutionTrace& b) {
  if (a.size() != b.size()) throw DimensionError("traces have different lengths");
  double sup = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const TraceSample& x = a.samples[k];
    const TraceSample& y = b.samples[k];
    if (std::abs(x.t - y.t) > 1e-12 * std::max(1.0, std::abs(x.t))) {
      throw DomainError("traces are sampled at different times");
    }
    if (!x.snapshot || !y.snapshot) throw DomainError("trace sample without snapshot");
    sup = std::max(sup, a_norm(subtract(*x.snapshot, *y.snapshot)));
  }
  return sup;
}

}  // namespace apnls

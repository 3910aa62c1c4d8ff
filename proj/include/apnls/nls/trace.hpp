#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "apnls/core/series.hpp"

namespace apnls {

// Time-stamped solution samples. Scalars are kept for every sample; the
// series snapshot may be thinned (snapshots[k] empty).
struct TraceSample {
  double t = 0.0;
  double a_norm = 0.0;
  double l2_norm = 0.0;
  Complex zero_mode{0.0, 0.0};
  double discarded_mass = 0.0;  // cumulative
  int picard_iterations = 0;
  std::optional<APSeries> snapshot;
};

struct SolutionTrace {
  std::vector<TraceSample> samples;

  // Scalars computed from u; discarded and iteration count filled by caller.
  void record(double t, const APSeries& u, double discarded, int picard_iterations,
              bool keep_snapshot = true);

  std::size_t size() const { return samples.size(); }
  bool empty() const { return samples.empty(); }
  const TraceSample& back() const { return samples.back(); }

  // Times strictly increasing and stored scalars consistent with snapshots.
  bool consistent(double tol = 1e-12) const;
};

// Supremum over common samples of a_norm(a_k - b_k). Requires identical time
// stamps and snapshots on both traces.
double sup_l1_distance(const SolutionTrace& a, const SolutionTrace& b);

}  // namespace apnls

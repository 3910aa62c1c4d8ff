#pragma once

#include <vector>

#include "apnls/core/errors.hpp"
#include "apnls/core/freq_vector.hpp"
#include "apnls/core/series.hpp"
#include "apnls/nls/nonlinearity.hpp"
#include "apnls/nls/trace.hpp"

namespace apnls::oracle {

// Initial data has modes outside the fixed support.
class SupportClosureError : public Error {
 public:
  SupportClosureError(const std::string& what, std::vector<FreqVector> escaping)
      : Error(what), escaping_(std::move(escaping)) {}
  const std::vector<FreqVector>& escaping() const { return escaping_; }

 private:
  std::vector<FreqVector> escaping_;
};

// All n with |n|_inf <= radius, in canonical order.
std::vector<FreqVector> box_support(std::size_t dim, int radius);

// Integrates the coefficient ODE
//   u_n' = -i (omega.n)^2 u_n - i [N(u)]_n,   n in support,
// with N projected onto the fixed support, in the original (non-rotated)
// frame. Adaptive Dormand-Prince 5(4) with dense output, absolute and
// relative tolerance tol. The nonlinearity is an independent dense-array
// convolution over the bounding box of the support.
SolutionTrace ode_reference(const APSeries& f, const NonlinearitySpec& spec,
                            const std::vector<FreqVector>& support, const std::vector<double>& times,
                            double tol);

// Uniform output grid of `outputs` intervals on [0, t_end].
SolutionTrace ode_reference(const APSeries& f, const NonlinearitySpec& spec,
                            const std::vector<FreqVector>& support, double t_end, double tol,
                            std::size_t outputs = 100);

}  // namespace apnls::oracle

#include "apnls/oracle/ode_reference.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <boost/numeric/odeint.hpp>

namespace apnls::oracle {

namespace {

// Dense coefficient array over the box lo <= n <= lo + ext - 1, row-major.
struct DenseField {
  std::vector<int> lo;
  std::vector<int> ext;
  std::vector<Complex> data;

  std::size_t flat(const FreqVector& n) const {
    std::size_t idx = 0;
    for (std::size_t j = 0; j < lo.size(); ++j) idx = idx * ext[j] + static_cast<std::size_t>(n[j] - lo[j]);
    return idx;
  }
  bool contains(const FreqVector& n) const {
    for (std::size_t j = 0; j < lo.size(); ++j) {
      if (n[j] < lo[j] || n[j] >= lo[j] + ext[j]) return false;
    }
    return true;
  }
};

// Field of conj(u(x)): coefficient at -n is conj of coefficient at n.
// Reversing every axis of a row-major array reverses its flat order.
DenseField conj_field(const DenseField& a) {
  DenseField out;
  out.ext = a.ext;
  out.lo.resize(a.lo.size());
  for (std::size_t j = 0; j < a.lo.size(); ++j) out.lo[j] = -(a.lo[j] + a.ext[j] - 1);
  out.data.assign(a.data.rbegin(), a.data.rend());
  for (Complex& c : out.data) c = std::conj(c);
  return out;
}

// Flat offsets of every cell of `a` inside an array with the given extents.
std::vector<std::size_t> offsets_in(const DenseField& a, const std::vector<int>& out_ext) {
  const std::size_t G = a.lo.size();
  std::vector<std::size_t> offs(a.data.size());
  std::vector<int> idx(G, 0);
  for (std::size_t flat = 0; flat < a.data.size(); ++flat) {
    std::size_t o = 0;
    for (std::size_t j = 0; j < G; ++j) o = o * out_ext[j] + idx[j];
    offs[flat] = o;
    for (std::size_t j = G; j-- > 0;) {
      if (++idx[j] < a.ext[j]) break;
      idx[j] = 0;
    }
  }
  return offs;
}

DenseField convolve(const DenseField& a, const DenseField& b) {
  DenseField out;
  const std::size_t G = a.lo.size();
  out.lo.resize(G);
  out.ext.resize(G);
  std::size_t total = 1;
  for (std::size_t j = 0; j < G; ++j) {
    out.lo[j] = a.lo[j] + b.lo[j];
    out.ext[j] = a.ext[j] + b.ext[j] - 1;
    total *= out.ext[j];
  }
  out.data.assign(total, Complex(0.0, 0.0));
  const auto oa = offsets_in(a, out.ext);
  const auto ob = offsets_in(b, out.ext);
  for (std::size_t x = 0; x < a.data.size(); ++x) {
    if (a.data[x] == Complex(0.0, 0.0)) continue;
    for (std::size_t y = 0; y < b.data.size(); ++y) {
      out.data[oa[x] + ob[y]] += a.data[x] * b.data[y];
    }
  }
  return out;
}

class CoefficientSystem {
 public:
  CoefficientSystem(const APSeries& f, const NonlinearitySpec& spec,
                    const std::vector<FreqVector>& support)
      : spec_(spec), support_(support) {
    const std::size_t G = f.basis().dim();
    field_.lo.assign(G, 0);
    field_.ext.assign(G, 1);
    if (!support_.empty()) {
      std::vector<int> hi(G);
      for (std::size_t j = 0; j < G; ++j) {
        field_.lo[j] = hi[j] = support_.front()[j];
      }
      for (const FreqVector& n : support_) {
        for (std::size_t j = 0; j < G; ++j) {
          field_.lo[j] = std::min(field_.lo[j], n[j]);
          hi[j] = std::max(hi[j], n[j]);
        }
      }
      for (std::size_t j = 0; j < G; ++j) field_.ext[j] = hi[j] - field_.lo[j] + 1;
    }
    std::size_t total = 1;
    for (int e : field_.ext) total *= e;
    field_.data.assign(total, Complex(0.0, 0.0));

    const auto& gens = f.basis().generators();
    for (const FreqVector& n : support_) {
      double w = 0.0;
      for (std::size_t j = 0; j < G; ++j) w += gens[j] * n[j];
      dispersion_.push_back(w * w);
      slot_.push_back(field_.flat(n));
    }
  }

  void operator()(const std::vector<double>& x, std::vector<double>& dxdt, double) {
    std::fill(field_.data.begin(), field_.data.end(), Complex(0.0, 0.0));
    for (std::size_t s = 0; s < support_.size(); ++s) {
      field_.data[slot_[s]] = {x[2 * s], x[2 * s + 1]};
    }
    DenseField n = nonlinear_field();
    const Complex minus_i{0.0, -1.0};
    for (std::size_t s = 0; s < support_.size(); ++s) {
      Complex u{x[2 * s], x[2 * s + 1]};
      Complex nv = n.contains(support_[s]) ? n.data[n.flat(support_[s])] : Complex(0.0, 0.0);
      Complex du = minus_i * dispersion_[s] * u + minus_i * spec_.lambda * nv;
      dxdt[2 * s] = du.real();
      dxdt[2 * s + 1] = du.imag();
    }
  }

 private:
  DenseField nonlinear_field() const {
    DenseField acc;
    bool have = false;
    auto mul = [&](const DenseField& factor) {
      acc = have ? convolve(acc, factor) : factor;
      have = true;
    };
    for (int r = 0; r < spec_.k; ++r) mul(field_);
    if (spec_.p - spec_.k > 0) {
      DenseField conj = conj_field(field_);
      for (int r = 0; r < spec_.p - spec_.k; ++r) mul(conj);
    }
    return acc;
  }

  NonlinearitySpec spec_;
  std::vector<FreqVector> support_;
  DenseField field_;
  std::vector<double> dispersion_;
  std::vector<std::size_t> slot_;
};

}  // namespace

std::vector<FreqVector> box_support(std::size_t dim, int radius) {
  std::vector<FreqVector> out;
  FreqVector n(dim);
  for (std::size_t j = 0; j < dim; ++j) n[j] = -radius;
  for (;;) {
    out.push_back(n);
    std::size_t j = dim;
    for (;;) {
      if (j == 0) return out;
      --j;
      if (n[j] < radius) {
        ++n[j];
        break;
      }
      n[j] = -radius;
    }
  }
}

SolutionTrace ode_reference(const APSeries& f, const NonlinearitySpec& spec,
                            const std::vector<FreqVector>& support, const std::vector<double>& times,
                            double tol) {
  spec.validate();
  std::vector<FreqVector> sorted = support;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  std::vector<FreqVector> escaping;
  for (const Term& t : f.terms()) {
    if (!std::binary_search(sorted.begin(), sorted.end(), t.freq)) escaping.push_back(t.freq);
  }
  if (!escaping.empty()) {
    std::string list;
    for (const FreqVector& n : escaping) list += " " + n.to_string();
    throw SupportClosureError("initial data has modes outside the support:" + list, escaping);
  }
  if (times.empty() || times.front() != 0.0) throw DomainError("output times must start at 0");

  std::vector<double> x(2 * sorted.size());
  for (std::size_t s = 0; s < sorted.size(); ++s) {
    Complex c = f.coefficient(sorted[s]);
    x[2 * s] = c.real();
    x[2 * s + 1] = c.imag();
  }

  CoefficientSystem system(f, spec, sorted);
  SolutionTrace trace;
  auto observe = [&](const std::vector<double>& state, double t) {
    std::vector<Term> terms;
    for (std::size_t s = 0; s < sorted.size(); ++s) {
      terms.push_back({sorted[s], Complex(state[2 * s], state[2 * s + 1])});
    }
    trace.record(t, APSeries(f.basis_ptr(), std::move(terms)), 0.0, 0);
  };

  namespace odeint = boost::numeric::odeint;
  using Stepper = odeint::runge_kutta_dopri5<std::vector<double>>;
  const double dt0 = times.size() > 1 ? std::min(1e-3, times[1] - times[0]) : 1e-3;
  odeint::integrate_times(odeint::make_dense_output(tol, tol, Stepper()), std::ref(system), x,
                          times.begin(), times.end(), dt0, observe);
  return trace;
}

SolutionTrace ode_reference(const APSeries& f, const NonlinearitySpec& spec,
                            const std::vector<FreqVector>& support, double t_end, double tol,
                            std::size_t outputs) {
  if (!(t_end > 0.0) || outputs < 1) throw DomainError("ode_reference needs t_end > 0 and outputs >= 1");
  std::vector<double> times(outputs + 1);
  for (std::size_t i = 0; i <= outputs; ++i) times[i] = t_end * static_cast<double>(i) / outputs;
  return ode_reference(f, spec, support, times, tol);
}

}  // namespace apnls::oracle

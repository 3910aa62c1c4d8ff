#include "apnls/oracle/grid_mean.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "apnls/core/errors.hpp"

namespace apnls::oracle {

namespace {

struct Mode {
  double omega;
  Complex c;
};

std::vector<Mode> modes_of(const APSeries& f) {
  std::vector<Mode> modes;
  const auto& gens = f.basis().generators();
  for (const Term& t : f.terms()) {
    double w = 0.0;
    for (std::size_t j = 0; j < gens.size(); ++j) w += gens[j] * static_cast<double>(t.freq[j]);
    modes.push_back({w, t.coeff});
  }
  return modes;
}

Complex sample(const std::vector<Mode>& modes, double x) {
  double re = 0.0, im = 0.0;
  for (const Mode& m : modes) {
    const double th = m.omega * x;
    const double c = std::cos(th), s = std::sin(th);
    re += m.c.real() * c - m.c.imag() * s;
    im += m.c.real() * s + m.c.imag() * c;
  }
  return {re, im};
}

constexpr std::size_t kBlocks = 256;

}  // namespace

void GridWindow::validate() const {
  if (!(half_width > 0.0)) throw DomainError("grid window half-width must be positive");
  if (samples < 2) throw DomainError("grid window needs at least 2 samples");
}

GridMoments grid_moments(const APSeries& f, const GridWindow& w) {
  w.validate();
  const auto modes = modes_of(f);
  const double h = 2.0 * w.half_width / static_cast<double>(w.samples);
  const std::size_t blocks = std::min(kBlocks, w.samples);
  std::vector<Complex> block_sum(blocks);
  std::vector<double> block_abs2(blocks);

#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(blocks); ++b) {
    const std::size_t begin = w.samples * b / blocks;
    const std::size_t end = w.samples * (b + 1) / blocks;
    Complex s{0.0, 0.0};
    double a = 0.0;
    for (std::size_t k = begin; k < end; ++k) {
      Complex v = sample(modes, -w.half_width + (static_cast<double>(k) + 0.5) * h);
      s += v;
      a += v.real() * v.real() + v.imag() * v.imag();
    }
    block_sum[b] = s;
    block_abs2[b] = a;
  }

  GridMoments out;
  for (std::size_t b = 0; b < blocks; ++b) {
    out.mean += block_sum[b];
    out.mean_abs2 += block_abs2[b];
  }
  const double n = static_cast<double>(w.samples);
  out.mean /= n;
  out.mean_abs2 /= n;
  return out;
}

GridMoments grid_moments_serial(const APSeries& f, const GridWindow& w) {
  w.validate();
  const auto modes = modes_of(f);
  const double h = 2.0 * w.half_width / static_cast<double>(w.samples);
  GridMoments out;
  for (std::size_t k = 0; k < w.samples; ++k) {
    Complex v = sample(modes, -w.half_width + (static_cast<double>(k) + 0.5) * h);
    out.mean += v;
    out.mean_abs2 += v.real() * v.real() + v.imag() * v.imag();
  }
  const double n = static_cast<double>(w.samples);
  out.mean /= n;
  out.mean_abs2 /= n;
  return out;
}

}  // namespace apnls::oracle

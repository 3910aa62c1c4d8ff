#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "apnls/core/series.hpp"

namespace apnls {

// Cache of (omega.n)^2 for one support set. A table is valid only for series
// whose support matches the one it was built from; propagate() rebuilds it
// otherwise. Not shared between threads: each solver owns its table.
class PhaseTable {
 public:
  PhaseTable() = default;
  explicit PhaseTable(const APSeries& f);

  bool matches(const APSeries& f) const;
  std::size_t size() const { return squared_.size(); }
  double squared_frequency(std::size_t k) const { return squared_[k]; }
  std::size_t rebuilds() const { return rebuilds_; }

  // Rebuild if f's support differs from the cached one.
  void refresh(const APSeries& f);

 private:
  BasisPtr basis_;
  std::vector<FreqVector> support_;
  std::vector<double> squared_;
  std::size_t rebuilds_ = 0;
};

// Free Schroedinger flow S(t): f^(n) -> f^(n) e^{-i (omega.n)^2 t}.
APSeries propagate(const APSeries& f, double t);
APSeries propagate(const APSeries& f, double t, PhaseTable& table);

// Uniform time grid t_i = i * step, i = 0..points-1.
struct UniformGrid {
  double step = 0.0;
  std::size_t points = 0;

  double time(std::size_t i) const { return static_cast<double>(i) * step; }
  // Index of grid point t; DomainError if t is not on the grid.
  std::size_t index_of(double t) const;
};

// -i * trapezoid quadrature of S(t_i - t') F(t') over [0, t_i].
APSeries duhamel(std::span<const APSeries> samples, const UniformGrid& grid, std::size_t index);
APSeries duhamel(std::span<const APSeries> samples, const UniformGrid& grid, double t);

// Duhamel term at every grid point in O(points * support) by accumulating
// S(-t') F(t') and rotating back with S(t_i).
std::vector<APSeries> duhamel_all(std::span<const APSeries> samples, const UniformGrid& grid);

}  // namespace apnls

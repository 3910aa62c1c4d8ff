#include "apnls/schrodinger/propagator.hpp"

#include <cmath>

namespace apnls {

namespace {

void require_samples(std::span<const APSeries> samples, const UniformGrid& grid) {
  if (samples.size() != grid.points) {
    throw DimensionError("Duhamel needs one sample per grid point");
  }
  if (!(grid.step > 0.0)) throw DomainError("Duhamel grid step must be positive");
  for (const APSeries& s : samples) samples.front().require_compatible(s);
}

}  // namespace

PhaseTable::PhaseTable(const APSeries& f) { refresh(f); }

bool PhaseTable::matches(const APSeries& f) const {
  if (!basis_ || support_.size() != f.size()) return false;
  if (basis_ != f.basis_ptr() && !(*basis_ == f.basis())) return false;
  for (std::size_t k = 0; k < support_.size(); ++k) {
    if (support_[k] != f.terms()[k].freq) return false;
  }
  return true;
}

void PhaseTable::refresh(const APSeries& f) {
  if (matches(f)) return;
  basis_ = f.basis_ptr();
  support_.clear();
  squared_.clear();
  support_.reserve(f.size());
  squared_.reserve(f.size());
  for (const Term& t : f.terms()) {
    double w = frequency_of(f.basis(), t.freq);
    support_.push_back(t.freq);
    squared_.push_back(w * w);
  }
  ++rebuilds_;
}

APSeries propagate(const APSeries& f, double t) {
  PhaseTable table(f);
  return propagate(f, t, table);
}

APSeries propagate(const APSeries& f, double t, PhaseTable& table) {
  if (t == 0.0) return f;
  table.refresh(f);
  std::vector<Term> out(f.terms().begin(), f.terms().end());
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k].coeff *= std::polar(1.0, -table.squared_frequency(k) * t);
  }
  return APSeries::from_canonical(f.basis_ptr(), std::move(out));
}

std::size_t UniformGrid::index_of(double t) const {
  if (!(step > 0.0) || points == 0) throw DomainError("empty time grid");
  double k = std::round(t / step);
  if (k < 0.0 || k >= static_cast<double>(points) ||
      std::abs(k * step - t) > 1e-9 * step) {
    throw DomainError("time " + std::to_string(t) + " is not a point of the grid");
  }
  return static_cast<std::size_t>(k);
}

APSeries duhamel(std::span<const APSeries> samples, const UniformGrid& grid, std::size_t index) {
  require_samples(samples, grid);
  if (index >= grid.points) throw DomainError("Duhamel index outside the grid");
  APSeries acc(samples.front().basis_ptr());
  if (index == 0) return acc;
  const double ti = grid.time(index);
  for (std::size_t l = 0; l <= index; ++l) {
    double w = (l == 0 || l == index) ? 0.5 * grid.step : grid.step;
    acc = add(acc, scale(propagate(samples[l], ti - grid.time(l)), w));
  }
  return scale(acc, Complex(0.0, -1.0));
}

APSeries duhamel(std::span<const APSeries> samples, const UniformGrid& grid, double t) {
  return duhamel(samples, grid, grid.index_of(t));
}

std::vector<APSeries> duhamel_all(std::span<const APSeries> samples, const UniformGrid& grid) {
  require_samples(samples, grid);
  const BasisPtr& basis = samples.front().basis_ptr();
  std::vector<APSeries> rotated;
  rotated.reserve(grid.points);
  for (std::size_t l = 0; l < grid.points; ++l) {
    rotated.push_back(propagate(samples[l], -grid.time(l)));
  }
  std::vector<APSeries> out;
  out.reserve(grid.points);
  out.emplace_back(basis);
  APSeries running(basis);
  for (std::size_t i = 1; i < grid.points; ++i) {
    running = add(running, scale(add(rotated[i - 1], rotated[i]), 0.5 * grid.step));
    out.push_back(scale(propagate(running, grid.time(i)), Complex(0.0, -1.0)));
  }
  return out;
}

}  // namespace apnls

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "apnls/core/basis.hpp"
#include "apnls/core/freq_vector.hpp"

namespace apnls {

using Complex = std::complex<double>;

struct Term {
  FreqVector freq;
  Complex coeff;

  friend bool operator==(const Term&, const Term&) = default;
};

// Finite-support element of the Wiener-type algebra A_omega(R): a sparse map
// FreqVector -> coefficient, stored as a vector sorted by FreqVector. Stored
// coefficients are never exactly zero.
class APSeries {
 public:
  explicit APSeries(BasisPtr basis);

  // Terms may come in any order; repeated frequencies are summed in input
  // order and exact zeros are dropped.
  APSeries(BasisPtr basis, std::vector<Term> terms);

  // Caller guarantees: sorted, unique, no zero coefficients, right dimension.
  static APSeries from_canonical(BasisPtr basis, std::vector<Term> terms);

  static APSeries constant(BasisPtr basis, Complex c);
  static APSeries monomial(BasisPtr basis, const FreqVector& n, Complex c);

  const Basis& basis() const { return *basis_; }
  const BasisPtr& basis_ptr() const { return basis_; }

  std::span<const Term> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  // Coefficient at n, 0 if absent.
  Complex coefficient(const FreqVector& n) const;

  // Same basis (by identity or value).
  bool compatible(const APSeries& other) const;
  void require_compatible(const APSeries& other) const;

  // Exact, bitwise comparison of the stored terms.
  friend bool operator==(const APSeries& a, const APSeries& b) {
    return a.compatible(b) && a.terms_ == b.terms_;
  }

 private:
  APSeries(BasisPtr basis, std::vector<Term> terms, bool canonical);

  BasisPtr basis_;
  std::vector<Term> terms_;
};

APSeries add(const APSeries& f, const APSeries& g);
APSeries subtract(const APSeries& f, const APSeries& g);
APSeries scale(const APSeries& f, Complex c);
// (n, c) -> (-n, conj c): the series of the pointwise complex conjugate.
APSeries conjugate(const APSeries& f);

// Wiener norm: sum of |coefficients| in canonical order.
double a_norm(const APSeries& f);

// Mean-square norm via Parseval. On a basis not declared independent,
// coefficients whose real frequencies agree within independence_tol are summed
// first.
double l2_norm(const APSeries& f);

// M(f): the zero-frequency coefficient (grouped as in l2_norm on dependent
// bases).
Complex mean_value(const APSeries& f);

// Sum of f^(n) e^{i (omega.n) x} in canonical order.
Complex evaluate(const APSeries& f, double x);

// sqrt(sum_n <n>^{2s} |f^(n)|^2) with <n>^s = prod_j (1 + n_j^2)^{s_j / 2}.
double sobolev_norm(const APSeries& f, std::span<const double> s);

// Truncate to the max-norm box |n|_inf <= radius. Returns the l1 mass removed.
double project_to_box(APSeries& f, int radius);

}  // namespace apnls

#include "apnls/core/series.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace apnls {

namespace {

bool by_freq(const Term& a, const Term& b) { return a.freq < b.freq; }

void check_dims(const Basis& basis, const std::vector<Term>& terms) {
  for (const Term& t : terms) {
    if (t.freq.dim() != basis.dim()) {
      throw DimensionError("term frequency " + t.freq.to_string() +
                           " does not match basis of dimension " + std::to_string(basis.dim()));
    }
  }
}

// Frequencies of the entries grouped so that members of a group coincide as
// real numbers within the basis tolerance. Groups come out in increasing
// frequency; members in canonical order.
std::vector<std::vector<std::size_t>> frequency_groups(const APSeries& f) {
  std::vector<std::pair<double, std::size_t>> order;
  order.reserve(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    order.emplace_back(frequency_of(f.basis(), f.terms()[i].freq), i);
  }
  std::sort(order.begin(), order.end());

  std::vector<std::vector<std::size_t>> groups;
  const double tol = f.basis().independence_tol();
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (k == 0 || !(order[k].first - order[k - 1].first < tol)) groups.emplace_back();
    groups.back().push_back(order[k].second);
  }
  for (auto& g : groups) std::sort(g.begin(), g.end());
  return groups;
}

}  // namespace

APSeries::APSeries(BasisPtr basis) : basis_(std::move(basis)) {
  if (!basis_) throw DomainError("series requires a basis");
}

APSeries::APSeries(BasisPtr basis, std::vector<Term> terms) : APSeries(std::move(basis)) {
  check_dims(*basis_, terms);
  std::stable_sort(terms.begin(), terms.end(), by_freq);
  std::vector<Term> merged;
  merged.reserve(terms.size());
  for (const Term& t : terms) {
    if (!merged.empty() && merged.back().freq == t.freq) {
      merged.back().coeff += t.coeff;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const Term& t) { return t.coeff == Complex(0.0, 0.0); });
  terms_ = std::move(merged);
}

APSeries::APSeries(BasisPtr basis, std::vector<Term> terms, bool)
    : basis_(std::move(basis)), terms_(std::move(terms)) {}

APSeries APSeries::from_canonical(BasisPtr basis, std::vector<Term> terms) {
  return APSeries(std::move(basis), std::move(terms), true);
}

APSeries APSeries::constant(BasisPtr basis, Complex c) {
  FreqVector zero = basis->zero();
  return APSeries(std::move(basis), {{zero, c}});
}

APSeries APSeries::monomial(BasisPtr basis, const FreqVector& n, Complex c) {
  return APSeries(std::move(basis), {{n, c}});
}

Complex APSeries::coefficient(const FreqVector& n) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), n,
                             [](const Term& t, const FreqVector& key) { return t.freq < key; });
  if (it != terms_.end() && it->freq == n) return it->coeff;
  return {0.0, 0.0};
}

bool APSeries::compatible(const APSeries& other) const {
  return basis_ == other.basis_ || *basis_ == *other.basis_;
}

void APSeries::require_compatible(const APSeries& other) const {
  if (!compatible(other)) throw BasisMismatch("series are built on different bases");
}

APSeries add(const APSeries& f, const APSeries& g) {
  f.require_compatible(g);
  std::vector<Term> out;
  out.reserve(f.size() + g.size());
  auto a = f.terms().begin(), ae = f.terms().end();
  auto b = g.terms().begin(), be = g.terms().end();
  while (a != ae || b != be) {
    if (b == be || (a != ae && a->freq < b->freq)) {
      out.push_back(*a++);
    } else if (a == ae || b->freq < a->freq) {
      out.push_back(*b++);
    } else {
      Complex c = a->coeff + b->coeff;
      if (c != Complex(0.0, 0.0)) out.push_back({a->freq, c});
      ++a;
      ++b;
    }
  }
  return APSeries::from_canonical(f.basis_ptr(), std::move(out));
}

APSeries subtract(const APSeries& f, const APSeries& g) { return add(f, scale(g, -1.0)); }

APSeries scale(const APSeries& f, Complex c) {
  std::vector<Term> out;
  out.reserve(f.size());
  for (const Term& t : f.terms()) {
    Complex v = t.coeff * c;
    if (v != Complex(0.0, 0.0)) out.push_back({t.freq, v});
  }
  return APSeries::from_canonical(f.basis_ptr(), std::move(out));
}

APSeries conjugate(const APSeries& f) {
  std::vector<Term> out;
  out.reserve(f.size());
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    out.push_back({-it->freq, std::conj(it->coeff)});
  }
  return APSeries::from_canonical(f.basis_ptr(), std::move(out));
}

double a_norm(const APSeries& f) {
  double s = 0.0;
  for (const Term& t : f.terms()) s += std::abs(t.coeff);
  return s;
}

double l2_norm(const APSeries& f) {
  double s = 0.0;
  if (f.basis().declared_independent()) {
    for (const Term& t : f.terms()) s += std::norm(t.coeff);
    return std::sqrt(s);
  }
  for (const auto& group : frequency_groups(f)) {
    Complex total{0.0, 0.0};
    for (std::size_t i : group) total += f.terms()[i].coeff;
    s += std::norm(total);
  }
  return std::sqrt(s);
}

Complex mean_value(const APSeries& f) {
  if (f.basis().declared_independent()) return f.coefficient(f.basis().zero());
  Complex total{0.0, 0.0};
  const double tol = f.basis().independence_tol();
  for (const Term& t : f.terms()) {
    if (std::abs(frequency_of(f.basis(), t.freq)) < tol || t.freq.is_zero()) total += t.coeff;
  }
  return total;
}

Complex evaluate(const APSeries& f, double x) {
  Complex s{0.0, 0.0};
  for (const Term& t : f.terms()) {
    s += t.coeff * std::polar(1.0, frequency_of(f.basis(), t.freq) * x);
  }
  return s;
}

double sobolev_norm(const APSeries& f, std::span<const double> s) {
  if (s.size() != f.basis().dim()) {
    throw DimensionError("Sobolev exponent has length " + std::to_string(s.size()) +
                         ", basis has dimension " + std::to_string(f.basis().dim()));
  }
  double sum = 0.0;
  for (const Term& t : f.terms()) {
    double w = 1.0;
    for (std::size_t j = 0; j < s.size(); ++j) {
      double nj = t.freq[j];
      w *= std::pow(1.0 + nj * nj, s[j]);
    }
    sum += w * std::norm(t.coeff);
  }
  return std::sqrt(sum);
}

double project_to_box(APSeries& f, int radius) {
  double removed = 0.0;
  std::vector<Term> kept;
  kept.reserve(f.size());
  for (const Term& t : f.terms()) {
    if (t.freq.max_norm() <= radius) {
      kept.push_back(t);
    } else {
      removed += std::abs(t.coeff);
    }
  }
  if (kept.size() != f.size()) f = APSeries::from_canonical(f.basis_ptr(), std::move(kept));
  return removed;
}

}  // namespace apnls

#include "apnls/core/basis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

namespace apnls {

std::string FreqVector::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t j = 0; j < dim_; ++j) os << (j ? "," : "") << c_[j];
  os << ')';
  return os.str();
}

Basis::Basis(std::vector<double> generators, bool declared_independent,
             double independence_tol)
    : generators_(std::move(generators)),
      declared_independent_(declared_independent),
      independence_tol_(independence_tol) {
  if (generators_.empty() || generators_.size() > kMaxGenerators) {
    throw DimensionError("basis needs between 1 and " + std::to_string(kMaxGenerators) +
                         " generators, got " + std::to_string(generators_.size()));
  }
  for (double w : generators_) {
    if (!std::isfinite(w)) throw DomainError("basis generator is not finite");
  }
  if (!(independence_tol_ >= 0.0) || !std::isfinite(independence_tol_)) {
    throw DomainError("independence_tol must be finite and >= 0");
  }
}

std::vector<std::string> Basis::warnings() const {
  std::vector<std::string> out;
  for (std::size_t j = 0; j < generators_.size(); ++j) {
    if (generators_[j] == 0.0) {
      out.push_back("generator " + std::to_string(j + 1) + " is zero (duplicates the zero mode)");
    }
    for (std::size_t k = j + 1; k < generators_.size(); ++k) {
      if (std::abs(generators_[j] - generators_[k]) < independence_tol_ ||
          generators_[j] == generators_[k]) {
        out.push_back("generators " + std::to_string(j + 1) + " and " +
                      std::to_string(k + 1) + " coincide");
      }
    }
  }
  return out;
}

BasisPtr make_basis(std::vector<double> generators, bool declared_independent,
                    double independence_tol) {
  return std::make_shared<const Basis>(std::move(generators), declared_independent,
                                       independence_tol);
}

double named_generator(const std::string& name) {
  static const std::map<std::string, double> table = {
      {"sqrt2", std::numbers::sqrt2},
      {"sqrt3", std::numbers::sqrt3},
      {"sqrt5", 2.0 * std::numbers::phi - 1.0},
      {"golden", std::numbers::phi},
      {"pi", std::numbers::pi},
      {"e", std::numbers::e},
  };
  auto it = table.find(name);
  if (it == table.end()) throw ConfigError("unknown named generator '" + name + "'");
  return it->second;
}

double frequency_of(const Basis& basis, const FreqVector& n) {
  if (n.dim() != basis.dim()) {
    throw DimensionError("frequency vector " + n.to_string() + " does not match basis of dimension " +
                         std::to_string(basis.dim()));
  }
  double s = 0.0;
  for (std::size_t j = 0; j < n.dim(); ++j) s += basis.generators()[j] * n[j];
  return s;
}

CollisionScan collision_scan(const Basis& basis, int radius) {
  if (radius < 1) throw DomainError("collision_scan radius must be >= 1");
  const std::size_t G = basis.dim();
  const std::size_t side = 2 * static_cast<std::size_t>(radius) + 1;
  double total = std::pow(static_cast<double>(side), static_cast<double>(G));
  if (total > 1e8) {
    throw DomainError("collision_scan box of " + std::to_string(total) + " vectors is too large");
  }

  CollisionScan scan;
  scan.box_size = static_cast<std::size_t>(total);
  scan.large_box_warning = total > 1e6;

  std::vector<std::pair<double, FreqVector>> entries;
  entries.reserve(scan.box_size);
  FreqVector n(G);
  for (std::size_t j = 0; j < G; ++j) n[j] = -radius;
  for (;;) {
    entries.emplace_back(frequency_of(basis, n), n);
    std::size_t j = G;
    while (j > 0) {
      --j;
      if (n[j] < radius) {
        ++n[j];
        break;
      }
      n[j] = -radius;
      if (j == 0) goto done;
    }
  }
done:
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    return a.first < b.first || (a.first == b.first && a.second < b.second);
  });

  const double tol = basis.independence_tol();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (std::size_t k = i + 1; k < entries.size(); ++k) {
      if (!(entries[k].first - entries[i].first < tol)) break;
      const FreqVector& a = entries[i].second;
      const FreqVector& b = entries[k].second;
      scan.pairs.emplace_back(std::min(a, b), std::max(a, b));
    }
  }
  std::sort(scan.pairs.begin(), scan.pairs.end());
  return scan;
}

}  // namespace apnls

#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "apnls/core/freq_vector.hpp"

namespace apnls {

inline constexpr double kDefaultIndependenceTol = 1e-9;

// Frequency generators omega_1..omega_G. Every represented frequency is an
// integer combination omega . n. Independence over Q is declared by the user;
// collision_scan() gives bounded-box evidence.
class Basis {
 public:
  explicit Basis(std::vector<double> generators,
                 bool declared_independent = true,
                 double independence_tol = kDefaultIndependenceTol);

  std::size_t dim() const { return generators_.size(); }
  const std::vector<double>& generators() const { return generators_; }
  bool declared_independent() const { return declared_independent_; }
  double independence_tol() const { return independence_tol_; }

  // Zero or repeated generators. Permitted, but reported.
  std::vector<std::string> warnings() const;

  FreqVector zero() const { return FreqVector(dim()); }

  friend bool operator==(const Basis&, const Basis&) = default;

 private:
  std::vector<double> generators_;
  bool declared_independent_;
  double independence_tol_;
};

using BasisPtr = std::shared_ptr<const Basis>;

BasisPtr make_basis(std::vector<double> generators, bool declared_independent = true,
                    double independence_tol = kDefaultIndependenceTol);

// Named high-precision constants accepted in basis literals:
// sqrt2, sqrt3, sqrt5, golden, pi, e. Throws ConfigError on unknown names.
double named_generator(const std::string& name);

// sum_j omega_j n_j, accumulated in ascending j.
double frequency_of(const Basis& basis, const FreqVector& n);

struct CollisionScan {
  std::vector<std::pair<FreqVector, FreqVector>> pairs;
  std::size_t box_size = 0;
  bool large_box_warning = false;  // box_size > 1e6
};

// All pairs n != m with |n|_inf, |m|_inf <= radius and
// |omega.n - omega.m| < independence_tol. Each unordered pair is reported
// once, as (smaller, larger) in lexicographic order.
CollisionScan collision_scan(const Basis& basis, int radius);

}  // namespace apnls

#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>

#include "apnls/core/errors.hpp"

namespace apnls {

inline constexpr std::size_t kMaxGenerators = 8;

// Integer vector n in Z^G indexing the exponential e^{i (omega . n) x}.
// Storage is inline; unused slots are always zero so whole-array comparisons
// agree with component-wise ones.
class FreqVector {
 public:
  FreqVector() = default;

  explicit FreqVector(std::size_t dim) : dim_(check_dim(dim)) {}

  FreqVector(std::initializer_list<int> components)
      : dim_(check_dim(components.size())) {
    std::copy(components.begin(), components.end(), c_.begin());
  }

  explicit FreqVector(std::span<const int> components)
      : dim_(check_dim(components.size())) {
    std::copy(components.begin(), components.end(), c_.begin());
  }

  std::size_t dim() const { return dim_; }
  int operator[](std::size_t j) const { return c_[j]; }
  int& operator[](std::size_t j) { return c_[j]; }

  std::span<const std::int32_t> components() const { return {c_.data(), dim_}; }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.begin() + dim_,
                       [](std::int32_t v) { return v == 0; });
  }

  int max_norm() const {
    int m = 0;
    for (std::size_t j = 0; j < dim_; ++j) m = std::max(m, c_[j] < 0 ? -c_[j] : c_[j]);
    return m;
  }

  FreqVector operator-() const {
    FreqVector r(*this);
    for (std::size_t j = 0; j < dim_; ++j) r.c_[j] = -r.c_[j];
    return r;
  }

  friend FreqVector operator+(const FreqVector& a, const FreqVector& b) {
    require_same_dim(a, b);
    FreqVector r(a);
    for (std::size_t j = 0; j < a.dim_; ++j) r.c_[j] += b.c_[j];
    return r;
  }

  friend FreqVector operator-(const FreqVector& a, const FreqVector& b) {
    require_same_dim(a, b);
    FreqVector r(a);
    for (std::size_t j = 0; j < a.dim_; ++j) r.c_[j] -= b.c_[j];
    return r;
  }

  // Lexicographic on components; vectors of different length order by length.
  friend std::strong_ordering operator<=>(const FreqVector& a, const FreqVector& b) {
    if (a.dim_ != b.dim_) return a.dim_ <=> b.dim_;
    return std::lexicographical_compare_three_way(
        a.c_.begin(), a.c_.begin() + a.dim_, b.c_.begin(), b.c_.begin() + b.dim_);
  }
  friend bool operator==(const FreqVector& a, const FreqVector& b) {
    return a.dim_ == b.dim_ && a.c_ == b.c_;
  }

  std::size_t hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL ^ dim_;
    for (std::size_t j = 0; j < dim_; ++j) {
      h ^= static_cast<std::uint32_t>(c_[j]);
      h *= 0x100000001b3ULL;
      h ^= h >> 29;
    }
    return static_cast<std::size_t>(h);
  }

  std::string to_string() const;

 private:
  static std::uint8_t check_dim(std::size_t dim) {
    if (dim == 0 || dim > kMaxGenerators) {
      throw DimensionError("frequency vector length " + std::to_string(dim) +
                           " outside [1, " + std::to_string(kMaxGenerators) + "]");
    }
    return static_cast<std::uint8_t>(dim);
  }

  static void require_same_dim(const FreqVector& a, const FreqVector& b) {
    if (a.dim_ != b.dim_) throw DimensionError("frequency vector length mismatch");
  }

  std::array<std::int32_t, kMaxGenerators> c_{};
  std::uint8_t dim_ = 0;
};

// The member of {d, -d} that is lexicographically larger. Orders contributions
// so that global negation of all frequencies leaves the order unchanged.
inline FreqVector symmetric_representative(const FreqVector& d) {
  FreqVector neg = -d;
  return neg > d ? neg : d;
}

struct FreqVectorHash {
  std::size_t operator()(const FreqVector& n) const { return n.hash(); }
};

}  // namespace apnls

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace apnls {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A FreqVector or parameter vector has the wrong length for the basis.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Two series built on different bases were combined.
class BasisMismatch : public Error {
 public:
  using Error::Error;
};

// A product exceeded TruncationPolicy::max_support with no threshold to fall
// back on.
class CapacityError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

// Picard iteration did not reach its tolerance, or left the 2||f|| ball.
class ContractionFailure : public Error {
 public:
  ContractionFailure(const std::string& what, std::vector<double> ratios)
      : Error(what), ratios_(std::move(ratios)) {}
  const std::vector<double>& ratios() const { return ratios_; }

 private:
  std::vector<double> ratios_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace apnls

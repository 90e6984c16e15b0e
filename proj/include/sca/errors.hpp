#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sca {

// Caller broke a documented precondition (bad dimensions, out-of-range
// arguments, non-finite input, ...).
class ContractViolation : public std::invalid_argument {
 public:
  explicit ContractViolation(const std::string& what) : std::invalid_argument(what) {}
};

// Malformed input file. `offset` is the byte position where parsing gave up.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at byte " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// More corrupted coefficients than the observation count can support.
class CapacityExceeded : public std::runtime_error {
 public:
  explicit CapacityExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure inside a solver (rank-deficient system, ...).
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sca

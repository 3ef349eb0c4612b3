#pragma once

#include <stdexcept>
#include <string>

namespace equidist {

// Base for all errors raised by the library. Everything user-facing derives
// from this so the CLI can map failures onto exit codes.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad inputs: out-of-range coordinates, malformed CSV rows, invalid configs.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& msg) : Error(msg) {}
};

// Nearest-monitor query with an empty candidate set (e.g. county without a
// monitor). The pipeline catches this to exclude tracts from within-county
// analyses rather than aborting.
class NoCandidateError : public ValidationError {
 public:
  explicit NoCandidateError(const std::string& msg) : ValidationError(msg) {}
};

// Optimizer or sampler failed to meet its convergence contract.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& msg, double best_value)
      : Error(msg), best_value_(best_value) {}
  double best_value() const { return best_value_; }

 private:
  double best_value_;
};

}  // namespace equidist

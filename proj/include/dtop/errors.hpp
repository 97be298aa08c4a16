#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dtop {

/// Invalid physical input: bad body, degenerate inertia, malformed config.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Numerical failure during propagation (non-finite state).
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, std::int64_t step)
      : std::runtime_error(what + " at step " + std::to_string(step)), step_(step) {}

  std::int64_t step() const { return step_; }

 private:
  std::int64_t step_;
};

/// Rotation outside the domain of the unconstrained-vector chart.
class ChartError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace dtop

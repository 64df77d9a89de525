#pragma once

#include <cstddef>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <utility>

namespace porohyst {

namespace detail {
inline std::string format_residual(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.3e", value);
  return buffer;
}
}  // namespace detail

// Play threshold r must be strictly positive.
class InvalidThreshold : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised by test-only brute-force verifiers when no admissible candidate exists.
class OracleFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidTransform : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DivergentMass : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class IncompatibleInitialData : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InternalInconsistency : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Scenario violates a data hypothesis; `field()` names the offending key.
class InvalidScenario : public std::invalid_argument {
 public:
  InvalidScenario(std::string field, const std::string& what)
      : std::invalid_argument(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class ScenarioParseError : public std::runtime_error {
 public:
  ScenarioParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Nonlinear solve for one time step did not converge.
class StepFailure : public std::runtime_error {
 public:
  StepFailure(std::size_t step, double residual, const std::string& what)
      : std::runtime_error("step " + std::to_string(step) + ": " + what +
                           " (residual " + detail::format_residual(residual) + ")"),
        step_(step), residual_(residual) {}
  std::size_t step() const noexcept { return step_; }
  double residual() const noexcept { return residual_; }

 private:
  std::size_t step_;
  double residual_;
};

}  // namespace porohyst

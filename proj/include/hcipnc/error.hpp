#pragma once

#include <stdexcept>
#include <string>

namespace hcipnc {

/// Bad caller input: out-of-range quantum numbers, unknown units, malformed
/// configuration files. The CLI maps this to exit code 2.
class InputError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical routine failed to deliver the requested accuracy.
/// The CLI maps this to exit code 3.
class NumericError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Iterative procedure gave up; carries the last estimate it had.
class ConvergenceError : public NumericError {
public:
  ConvergenceError(const std::string &what, double best_estimate,
                   double error_estimate)
      : NumericError(what), best_estimate_(best_estimate),
        error_estimate_(error_estimate) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }

private:
  double best_estimate_;
  double error_estimate_;
};

} // namespace hcipnc

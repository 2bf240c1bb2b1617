#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace turanlab {

/// Base of every error raised by the library. `exit_code()` is what the CLI
/// returns when the error escapes a command.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
    virtual int exit_code() const noexcept { return 1; }
};

/// Input that violates a type invariant or an operation precondition.
class ValidationError : public Error {
  public:
    using Error::Error;
    int exit_code() const noexcept override { return 2; }
};

class ParseError : public ValidationError {
  public:
    using ValidationError::ValidationError;
};

/// Request beyond a documented enumeration / canonicalization bound.
class UnsupportedSize : public ValidationError {
  public:
    using ValidationError::ValidationError;
};

/// A well-posed request whose mathematical outcome is a failure.
class MathError : public Error {
  public:
    using Error::Error;
    int exit_code() const noexcept override { return 3; }
};

class OptimizerFailure : public MathError {
  public:
    OptimizerFailure(const std::string& what, double best_value,
                     std::vector<double> best_point)
        : MathError(what), best_value_(best_value),
          best_point_(std::move(best_point)) {}

    double best_value() const noexcept { return best_value_; }
    const std::vector<double>& best_point() const noexcept { return best_point_; }

  private:
    double best_value_;
    std::vector<double> best_point_;
};

class CertificateFailure : public MathError {
  public:
    CertificateFailure(const std::string& what, std::vector<std::string> failures)
        : MathError(what), failures_(std::move(failures)) {}

    /// Machine-readable failure tags, e.g. "condition_ii_failure".
    const std::vector<std::string>& failures() const noexcept { return failures_; }

  private:
    std::vector<std::string> failures_;
};

} // namespace turanlab

// Exception hierarchy shared by all modules. Categories map onto the CLI
// exit codes: invalid_input -> 1, numerical -> 2, io -> 3.
#pragma once

#include <stdexcept>
#include <string>

namespace geof {

enum class ErrorCategory { invalid_input = 1, numerical = 2, io = 3 };

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory cat, const std::string& what) : std::runtime_error(what), cat_(cat) {}
  ErrorCategory category() const noexcept { return cat_; }

 private:
  ErrorCategory cat_;
};

struct InvalidParams : Error {
  explicit InvalidParams(const std::string& w) : Error(ErrorCategory::invalid_input, w) {}
};

struct ParametrizationMismatch : InvalidParams {
  explicit ParametrizationMismatch(const std::string& w) : InvalidParams(w) {}
};

struct NotPhysical : Error {
  explicit NotPhysical(const std::string& w) : Error(ErrorCategory::invalid_input, w) {}
};

struct NotEntangled : Error {
  explicit NotEntangled(const std::string& w) : Error(ErrorCategory::invalid_input, w) {}
};

struct NotApplicable : Error {
  explicit NotApplicable(const std::string& w) : Error(ErrorCategory::invalid_input, w) {}
};

struct ExhaustedAttempts : Error {
  explicit ExhaustedAttempts(const std::string& w) : Error(ErrorCategory::invalid_input, w) {}
};

struct NumericalDomain : Error {
  explicit NumericalDomain(const std::string& w) : Error(ErrorCategory::numerical, w) {}
};

struct NoConvergence : Error {
  explicit NoConvergence(const std::string& w) : Error(ErrorCategory::numerical, w) {}
};

struct NoFeasiblePoint : Error {
  explicit NoFeasiblePoint(const std::string& w) : Error(ErrorCategory::numerical, w) {}
};

struct SingularTransform : Error {
  explicit SingularTransform(const std::string& w) : Error(ErrorCategory::numerical, w) {}
};

struct IoError : Error {
  explicit IoError(const std::string& w) : Error(ErrorCategory::io, w) {}
};

}  // namespace geof

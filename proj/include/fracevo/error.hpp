#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fracevo {

/// Failure categories shared by every module. The C API maps these one to one
/// onto `fracevo_status` values.
enum class ErrorCode {
  InvalidArgument,
  NonConvergence,
  ToleranceNotMet,
  RangeExceeded,
  DivergentStrip,
  StripViolation,
  SingularOrigin,
  DiracCase,
  KinkRefused,
  Unsupported,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Throws InvalidArgument with `message` unless `condition` holds.
inline void require(bool condition, const std::string& message) {
  if (!condition) throw Error(ErrorCode::InvalidArgument, message);
}

}  // namespace fracevo

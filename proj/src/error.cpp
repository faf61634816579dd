#include "fracevo/error.hpp"

namespace fracevo {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::NonConvergence: return "non_convergence";
    case ErrorCode::ToleranceNotMet: return "tolerance_not_met";
    case ErrorCode::RangeExceeded: return "range_exceeded";
    case ErrorCode::DivergentStrip: return "divergent_strip";
    case ErrorCode::StripViolation: return "strip_violation";
    case ErrorCode::SingularOrigin: return "singular_origin";
    case ErrorCode::DiracCase: return "dirac_case";
    case ErrorCode::KinkRefused: return "kink_refused";
    case ErrorCode::Unsupported: return "unsupported";
  }
  return "unknown";
}

}  // namespace fracevo

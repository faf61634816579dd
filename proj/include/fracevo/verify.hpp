#pragma once

// Built-in verification suites. Each check reduces to one number compared
// against a fixed threshold; the report serializes deterministically.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fracevo/mittag_leffler.hpp"
#include "fracevo/quadrature.hpp"

namespace fracevo::verify {

struct Check {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool passed = false;
  /// Set when the check threw instead of producing a value.
  std::string error;
};

struct Report {
  std::string suite;
  std::vector<Check> checks;

  bool passed() const;
};

struct VerifyOptions {
  /// Restricts the alpha-dependent suites to this order.
  std::optional<double> alpha;
  quad::QuadratureSpec quad;
  special::SeriesConfig series;
};

/// "specialfn", "lemmas", "subordination", "diffusion", "blackscholes" or "all".
std::vector<std::string_view> suite_names();
bool is_suite(std::string_view name);

/// Throws InvalidArgument for an unknown suite. Numerical errors raised by a
/// check are recorded as a failed check rather than propagated.
Report run_suite(std::string_view suite, const VerifyOptions& options = {});

/// JSON object with every double written as %.17g and fields in fixed order.
std::string to_json(const Report& report, const VerifyOptions& options = {});

}  // namespace fracevo::verify

#pragma once

// Pieces of the command-line tool that do not touch the library: grid
// parsing, exit codes and the CSV/JSON table writers.

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fracevo/fracevo.h"

namespace fracevo_cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitIo = 4;

/// Carries the process exit code alongside the message.
class CliError : public std::runtime_error {
 public:
  CliError(int exit_code, std::string status, const std::string& message)
      : std::runtime_error(message), exit_code_(exit_code), status_(std::move(status)) {}
  int exit_code() const { return exit_code_; }
  const std::string& status() const { return status_; }

 private:
  int exit_code_;
  std::string status_;
};

/// "start:stop:step" (stop included when within half a step) or "a,b,c".
/// The result is finite and strictly increasing; anything else throws
/// CliError with exit code 2.
std::vector<double> parse_grid(std::string_view spec);

int exit_code_for(fracevo_status status);

/// %.17g; nan and inf spelled "nan", "inf", "-inf".
std::string format_double(double x);

/// JSON string literal with escapes.
std::string json_string(std::string_view s);

using Cell = std::variant<double, long long, std::string>;

struct Table {
  std::string command;
  std::string settings;  // "key=value" pairs separated by spaces
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// "# fracevo <command> <version> <settings>", the header row, then rows.
std::string to_csv(const Table& table, std::string_view version);

/// {"tool", "command", "version", "settings", "columns", "rows"}.
std::string to_json(const Table& table, std::string_view version);

/// Machine-readable failure record written to stderr.
std::string error_record(const std::string& status, int exit_code, const std::string& message);

}  // namespace fracevo_cli

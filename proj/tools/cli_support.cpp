#include "cli_support.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

namespace fracevo_cli {

namespace {

[[noreturn]] void bad_grid(std::string_view spec, const std::string& why) {
  throw CliError(kExitInvalid, "invalid_argument", "grid '" + std::string(spec) + "': " + why);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view spec, std::string_view token) {
  token = trim(token);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || ec != std::errc() || ptr != token.data() + token.size())
    bad_grid(spec, "'" + std::string(token) + "' is not a number");
  if (!std::isfinite(value)) bad_grid(spec, "values must be finite");
  return value;
}

std::string render(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) return format_double(*d);
  if (const long long* i = std::get_if<long long>(&c)) return std::to_string(*i);
  return std::get<std::string>(c);
}

std::string render_json(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) return std::isfinite(*d) ? format_double(*d) : "null";
  if (const long long* i = std::get_if<long long>(&c)) return std::to_string(*i);
  return json_string(std::get<std::string>(c));
}

}  // namespace

std::vector<double> parse_grid(std::string_view spec) {
  const std::string_view body = trim(spec);
  if (body.empty()) bad_grid(spec, "empty");
  std::vector<double> out;
  if (body.find(':') != std::string_view::npos) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
      const std::size_t colon = body.find(':', start);
      parts.push_back(body.substr(start, colon - start));
      if (colon == std::string_view::npos) break;
      start = colon + 1;
    }
    if (parts.size() != 3) bad_grid(spec, "expected start:stop:step");
    const double lo = parse_number(spec, parts[0]);
    const double hi = parse_number(spec, parts[1]);
    const double step = parse_number(spec, parts[2]);
    if (step <= 0.0) bad_grid(spec, "step must be positive");
    if (lo > hi) bad_grid(spec, "start exceeds stop");
    const double count = std::floor((hi - lo) / step + 0.5);
    if (count > 1e6) bad_grid(spec, "more than 1e6 points");
    for (long k = 0; k <= static_cast<long>(count); ++k) out.push_back(lo + static_cast<double>(k) * step);
  } else {
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = body.find(',', start);
      out.push_back(parse_number(spec, body.substr(start, comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
  }
  for (std::size_t i = 1; i < out.size(); ++i)
    if (!(out[i] > out[i - 1])) bad_grid(spec, "values must be strictly increasing");
  return out;
}

int exit_code_for(fracevo_status status) {
  switch (status) {
    case FRACEVO_OK: return kExitOk;
    case FRACEVO_INVALID_ARGUMENT:
    case FRACEVO_STRIP_VIOLATION:
    case FRACEVO_SINGULAR_ORIGIN:
    case FRACEVO_DIRAC_CASE:
    case FRACEVO_KINK_REFUSED:
    case FRACEVO_UNSUPPORTED: return kExitInvalid;
    default: return kExitNumerical;
  }
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string json_string(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out + "\"";
}

std::string to_csv(const Table& table, std::string_view version) {
  std::string out = "# fracevo " + table.command + " " + std::string(version);
  if (!table.settings.empty()) out += " " + table.settings;
  out += "\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i) out += (i ? "," : "") + table.columns[i];
  out += "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + render(row[i]);
    out += "\n";
  }
  return out;
}

std::string to_json(const Table& table, std::string_view version) {
  std::string out = "{\n  \"tool\": \"fracevo\",\n  \"command\": " + json_string(table.command) +
                    ",\n  \"version\": " + json_string(version) + ",\n  \"settings\": " +
                    json_string(table.settings) + ",\n  \"columns\": [";
  for (std::size_t i = 0; i < table.columns.size(); ++i) out += (i ? ", " : "") + json_string(table.columns[i]);
  out += "],\n  \"rows\": [";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    out += r ? ",\n    [" : "\n    [";
    const auto& row = table.rows[r];
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? ", " : "") + render_json(row[i]);
    out += "]";
  }
  out += table.rows.empty() ? "]\n}\n" : "\n  ]\n}\n";
  return out;
}

std::string error_record(const std::string& status, int exit_code, const std::string& message) {
  return "{\"error\": {\"status\": " + json_string(status) + ", \"exit_code\": " + std::to_string(exit_code) +
         ", \"message\": " + json_string(message) + "}}\n";
}

}  // namespace fracevo_cli

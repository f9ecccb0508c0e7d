// Command-line front end: eval, deriv and check subcommands writing JSON
// Lines or CSV records.
#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lpd/oracle.hpp"
#include "lpd/types.hpp"

namespace lpd::cli {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kDomain = 2;
inline constexpr int kUnreadableGrid = 2;
inline constexpr int kPole = 3;
inline constexpr int kUsage = 64;
}  // namespace exit_code

struct OutputRecord {
  std::string function;
  Complex nu{};
  Complex mu{};
  Complex z{};
  std::optional<Complex> value;  // empty for error records in a check report
  std::string method;
  std::optional<double> err_estimate;
  std::optional<Complex> oracle_value;
  std::optional<double> rel_discrepancy;
};

/// One JSON object, no trailing newline. Field order is fixed.
std::string to_json_line(const OutputRecord& r);
std::string csv_header();
std::string to_csv_row(const OutputRecord& r);
/// Shortest representation that round-trips.
std::string format_double(double x);

/// "a" or "a,b" -> a + ib. Throws std::invalid_argument.
Complex parse_complex(const std::string& text);

/// Grid file: JSON array of objects
///   {"fn": "P"|"Q", "wrt": "degree"|"order", "at_int": M, "sign": "+"|"-",
///    "free": x | [re, im], "z": x | [re, im]}
/// "sign" may be omitted ("+"). Throws std::runtime_error on any problem.
std::vector<DerivRequest> read_grid(const std::string& path);

/// Thresholds with the LEGENDRE_CHECK_TOL override applied.
Thresholds thresholds_from_environment();

/// Records for a check run, in grid order, followed by special-case records.
std::vector<OutputRecord> check_records(const ConformanceReport& report, const SpecialCaseReport* special);

/// Writes `content` to a sibling temporary file and renames it over `path`.
void write_atomically(const std::string& path, const std::string& content);

int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace lpd::cli

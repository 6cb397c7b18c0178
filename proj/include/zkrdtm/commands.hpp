#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "zkrdtm/config.hpp"

namespace zkrdtm {

/// Process exit codes of the command line tool.
enum ExitCode : int {
  exit_ok = 0,
  exit_config_error = 2,
  exit_domain_exhausted = 3,
  exit_invariant_failure = 4,
};

struct CommandOptions {
  /// Test hook: corrupt U_k before the residual check (flips a coefficient sign).
  std::optional<int> corrupt_index;
};

int cmd_solve(const RunConfig& config, std::ostream& diag);
int cmd_table(const RunConfig& config, std::ostream& diag);
int cmd_residual(const RunConfig& config, const CommandOptions& options, std::ostream& diag);
int cmd_compare(const RunConfig& config, std::ostream& diag);

/// Dispatches by name and maps exceptions onto the exit-code contract.
int run_command(const std::string& name, const RunConfig& config, const CommandOptions& options, std::ostream& diag);

/// Scientific notation with 10 significant digits and a bare exponent,
/// e.g. 1.251447262e-6, -3.750000000e-19, 0.000000000e0.
std::string format_sci10(double value);

/// Shortest round-trip form with a mandatory fractional digit: fixed for 0
/// and 0.1 <= |v| < 1e6 ("0.5", "1.0"), scientific otherwise ("1.0e-5").
std::string format_coordinate(double value);

/// Writes to `path` via a temporary sibling file and rename, so readers
/// never see partial output; an empty path or "-" writes to stdout.
void write_output(const std::string& path, const std::string& content);

}  // namespace zkrdtm

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "perron/properties.hpp"

namespace perron {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  /// Property failure or solver non-convergence.
  kExitFailure = 1,
  /// Usage, parse, or input-validation error.
  kExitUsage = 2,
};

/// Environment variable supplying the default eps (below --eps).
inline constexpr const char* kEpsEnvVar = "PERRON_EPS";

/// Prints suite reports (text or JSON) and returns kExitOk if all passed,
/// kExitFailure otherwise.
int report_suite(const std::vector<PropertyReport>& reports, bool json, std::ostream& out);

/// Runs the tool. `args` includes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace perron

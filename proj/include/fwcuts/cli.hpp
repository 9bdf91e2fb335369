#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fwcuts {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitSeparated = 0,
  kExitOk = 0,
  kExitMembership = 1,
  kExitError = 2,
  kExitAuditFailed = 3,
  kExitUndecided = 4,
};

/// Runs one command. `args` excludes the program name. Colored plain output
/// is used only when `color_capable` is set and NO_COLOR is unset or empty.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            bool color_capable = false);

}  // namespace fwcuts

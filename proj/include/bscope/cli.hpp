#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bscope {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,  // unexpected failure, or `verify` found a mismatch
  kExitUsage = 2,
  kExitResource = 3,
  kExitInconclusive = 4,
};

/// Runs `bscope <args...>`; `args` excludes the program name. Reports go to
/// `--out` (written atomically) or to `out`; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bscope

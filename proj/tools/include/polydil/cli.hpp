#pragma once

#include <iosfwd>

namespace polydil {

/// Process exit codes of the polydil tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitParse = 2,
  kExitCertification = 3,
  kExitDilation = 4,
  kExitVerification = 5,
  kExitVnMargin = 6,
};

/// Entry point of the command line tool. Documents go to `out` (or the
/// --out file), diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace polydil

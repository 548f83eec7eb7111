#pragma once

#include <iosfwd>

namespace tvpd::tools {

enum ExitCode : int {
  kExitOk = 0,
  kExitReject = 1,
  kExitOutsideWindow = 2,
  kExitError = 3,
};

/// Entry point of the `tvpd` command. Subcommands: params, keygen, sign,
/// verify, bench.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tvpd::tools

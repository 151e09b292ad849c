#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace evote::app {

enum ExitCode : int {
  kExitOk = 0,
  kExitError = 1,  // pipeline failure not covered below
  kExitVerificationFailed = 2,
  kExitCoercionFlagged = 3,
  kExitUsage = 4,
};

// Subcommands: setup, run, verify, coin-sim, estimate. args excludes the
// program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "35265800" -> "35,265,800"
std::string group_thousands(std::uint64_t v);

}  // namespace evote::app

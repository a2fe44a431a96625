#pragma once

#include <exception>
#include <iosfwd>
#include <string>
#include <vector>

namespace fgm::harness {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitData = 2,
    kExitNumerical = 3,
};

/// Maps a module exception to the documented process exit code.
int exit_code_for(const std::exception& e);

/// Entry point of the `fgm` tool. `args[0]` is the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace fgm::harness

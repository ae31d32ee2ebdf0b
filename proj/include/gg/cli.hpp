#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gg {

enum ExitStatus : int {
    kExitOk = 0,
    kExitTypeError = 1,
    kExitParseError = 2,
    kExitRuntimeError = 3,
    kExitPropertyFailure = 4,
    kExitUsage = 5,
};

/// Runs one CLI invocation. `args` excludes the program name. Results go to
/// `out`, diagnostics to `err`.
int runCli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace gg

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lucky::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kMismatch = 2,
};

/// Runs one invocation. `args` excludes the program name. Reports go to
/// `out`; usage and budget errors go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lucky::cli

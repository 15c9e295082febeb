#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace swarmlab::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 2,
    kOverflow = 3,
    kFileError = 4,
    kDataError = 5,
};

// Runs one invocation. args excludes the program name. On success exactly one
// JSON envelope is written to out; diagnostics go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace swarmlab::cli

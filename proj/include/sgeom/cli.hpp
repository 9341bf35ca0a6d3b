#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sgeom::cli {

/// Exit codes of the command-line tool.
enum Exit : int {
    kOk = 0,
    kBadInput = 1,
    kHalfspace = 2,
    kDegenerate = 3,
    kCounterexample = 4,
    kDiverged = 5,
};

/// Runs one command. args[0] is the program name. The resolved configuration
/// is logged to `err` as one JSON line before the command runs.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sgeom::cli

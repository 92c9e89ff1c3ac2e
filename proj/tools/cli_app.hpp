// Command line front end, separated from main() so tests can drive it with
// argument vectors and capture the streams.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace biphoton::cli {

// Runs the tool on the given arguments (program name excluded) and returns
// the process exit code: 0 on success with all runtime checks holding, 1 on
// a failed check or runtime error, 2 on a usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace biphoton::cli

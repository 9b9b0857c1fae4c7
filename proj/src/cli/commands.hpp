#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hw2f::cli {

enum ExitCode : int {
    kSuccess = 0,
    kFailure = 1,
    kConfigError = 2,
    kNumericalError = 3,
};

/// Entry point of the `hw2f` tool. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hw2f::cli

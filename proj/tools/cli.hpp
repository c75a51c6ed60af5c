#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace smalp::cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kResourceLimit = 2 };

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace smalp::cli

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace filterscope::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kInput = 2, kInternal = 3 };

/// Runs the command line with args[0] as the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace filterscope::cli

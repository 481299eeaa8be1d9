#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lift {

enum ExitCode : int { kPass = 0, kCheckFailed = 1, kUsage = 2, kIoError = 3 };

// Entry point of the `lift` tool; argv[0] is the program name.
int run_cli(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace lift

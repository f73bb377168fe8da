#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace parscale {

// Runs one CLI invocation.  `args` excludes the program name.  Exit codes:
// 0 success, 1 usage error, 2 data error (unreadable or invalid config/CSV
// content).
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace parscale

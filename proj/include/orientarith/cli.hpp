#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace orient::cli {

enum ExitCode { exit_ok = 0, exit_negative = 1, exit_usage = 2 };

// args excludes the program name. Reports go to out (or --out), diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace orient::cli

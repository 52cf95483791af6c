#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace riordan::cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kInfeasible = 2 };

// args excludes the program name. Output format defaults to text when
// `interactive` is set and to JSON otherwise.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        bool interactive = false);

}  // namespace riordan::cli

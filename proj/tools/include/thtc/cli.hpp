#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace thtc::cli {

enum ExitCode : int { kOk = 0, kNegative = 1, kInputError = 2, kResourceLimit = 3 };

/// Runs one command line (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// troff manual page built from the command declarations.
std::string manual_page();

}  // namespace thtc::cli

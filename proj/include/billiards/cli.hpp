#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace billiards::cli {

enum ExitCode : int { kOk = 0, kDomainError = 1, kCapExceeded = 2, kUsage = 3 };

/// Runs one command line (without the program name). Text or JSON goes to
/// `out`, diagnostics and usage to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace billiards::cli

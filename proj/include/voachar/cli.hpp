#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace voachar {

enum ExitCode : int { kExitOk = 0, kExitViolation = 1, kExitUsage = 2, kExitComputation = 3 };

/// Runs one command; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace voachar

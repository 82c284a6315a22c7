#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spinorflow::cli {

enum ExitCode : int { kOk = 0, kInvalidPair = 1, kNumericFailure = 2, kIoFailure = 3 };

/// Runs one command line (without the program name) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spinorflow::cli

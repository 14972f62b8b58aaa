#pragma once

#include <ostream>

namespace fqa::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kVerificationFailed = 2,
  kMalformedInput = 3,
  kRuntimeError = 4,
};

/// Runs one command line. argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fqa::cli

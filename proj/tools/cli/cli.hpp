#pragma once

#include <ostream>

namespace dragfield::cli {

enum ExitCode : int {
  kOk = 0,
  kBadArguments = 2,
  kIoFailure = 3,
  kValidationFailure = 4,
};

/// Entry point shared by the `dragfield` binary and tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dragfield::cli

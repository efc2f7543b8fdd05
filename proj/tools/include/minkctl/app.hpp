#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace minkctl {

enum ExitCode : int {
  kOk = 0,
  kNegative = 1,  // non-existent, failed verdict, or cross-check disagreement
  kUsage = 2,     // parse errors, invalid specs, bad flags
  kIo = 3,
  kPrecondition = 4,
  kRetryExhausted = 5,
};

// Runs one minkctl invocation. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace minkctl

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace anth::cli {

enum ExitCode : int {
  kOk = 0,
  kInconclusive = 1,  // a prover could not decide (the C = 17 phenomenon)
  kInvalidInput = 2,
  kInternalFailure = 3,
};

// Dispatches `args` (args[0] is the program name). Honors ANTH_MAX_STEPS.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace anth::cli

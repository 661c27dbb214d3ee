#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace msp::cli {

// Dispatches a full command line. Returns the process exit code:
// 0 success, 1 failed verification/bound, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace msp::cli

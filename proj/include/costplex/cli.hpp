#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace costplex::cli {

// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kValidationError = 1;
inline constexpr int kRuntimeError = 2;

// Runs one command. args excludes the program name. Results go to --output
// (written atomically) or to `out`; diagnostics go to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace costplex::cli

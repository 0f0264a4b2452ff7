#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sigtamp::cli {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kOutEnv = "SIGTAMP_OUT";

enum ExitCode : int { kOk = 0, kInvalidInput = 2, kInternalError = 3 };

// Runs one command line (args exclude the program name). Errors are written
// to `err` as a single JSON object.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sigtamp::cli

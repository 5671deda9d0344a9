#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dirac::cli {

inline constexpr const char* kVersion = "1.0.0";

/// Exit codes: 0 success, 1 internal error, 2 validation error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

/// Convenience overload; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace dirac::cli

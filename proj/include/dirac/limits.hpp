#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dirac {

/// Raised for malformed input: bad ranges, probabilities, lag mismatches.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a model has no closed form for the requested quantity.
class UnsupportedModel : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a request would materialise more weights than allowed.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultMaxWindow = std::size_t{1} << 22;

/// Maximum window length. Read once from DIRAC_MAX_WINDOW, default 2^22.
std::size_t max_window_length();

/// Overrides the cap for the rest of the process (tests, CLI flags).
void set_max_window_length(std::size_t cap);

/// Throws ResourceError naming `what` when `length` exceeds the cap.
void check_window_length(std::size_t length, const std::string& what);

} // namespace dirac

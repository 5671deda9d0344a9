#include "dirac/limits.hpp"

#include <atomic>
#include <charconv>
#include <cstdlib>
#include <cstring>

namespace dirac {

namespace {

std::size_t cap_from_environment()
{
    const char* env = std::getenv("DIRAC_MAX_WINDOW");
    if (env == nullptr) {
        return kDefaultMaxWindow;
    }
    std::size_t value = 0;
    const auto* end = env + std::strlen(env);
    auto [ptr, ec] = std::from_chars(env, end, value);
    if (ec != std::errc{} || ptr != end || value == 0) {
        return kDefaultMaxWindow;
    }
    return value;
}

std::atomic<std::size_t>& cap_storage()
{
    static std::atomic<std::size_t> cap{cap_from_environment()};
    return cap;
}

} // namespace

std::size_t max_window_length()
{
    return cap_storage().load(std::memory_order_relaxed);
}

void set_max_window_length(std::size_t cap)
{
    cap_storage().store(cap == 0 ? kDefaultMaxWindow : cap, std::memory_order_relaxed);
}

void check_window_length(std::size_t length, const std::string& what)
{
    const auto cap = max_window_length();
    if (length > cap) {
        throw ResourceError(what + ": window length " + std::to_string(length)
                            + " exceeds cap " + std::to_string(cap)
                            + " (set DIRAC_MAX_WINDOW to raise it)");
    }
}

} // namespace dirac

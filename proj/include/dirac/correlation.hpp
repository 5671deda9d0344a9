#pragma once

#include "dirac/combs.hpp"

#include <boost/rational.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dirac {

/// Autocorrelation coefficients eta(m) for lags m in [-max_lag, max_lag].
struct Autocorrelation {
    std::int64_t max_lag = 0;
    /// eta(m) stored at index m + max_lag.
    std::vector<double> eta;
    /// Half-size N of the averaging window; empty for closed-form coefficients.
    std::optional<std::int64_t> window_half_size;

    double at(std::int64_t m) const { return eta.at(static_cast<std::size_t>(m + max_lag)); }
    bool is_analytic() const noexcept { return !window_half_size.has_value(); }
};

/// Estimate of eta(m) from the weights on [-N - M, N + M]:
///
///   eta(m) = (S(m) + S(-m)) / (2 (2N + 1)),   S(m) = sum_{n=-N}^{N} w_n w_{n+m}.
///
/// The window is extended by M on each side so no pair is truncated, and the
/// two one-sided sums are averaged so eta(-m) == eta(m) holds exactly. Both
/// one-sided sums converge to the same limit.
Autocorrelation empirical_autocorrelation(const ModelSpec& spec, std::int64_t N, std::int64_t M);

/// Same estimator on an existing window, which must cover [-N - M, N + M].
Autocorrelation autocorrelation_of_window(const WeightWindow& window, std::int64_t N, std::int64_t M);

/// Limiting coefficients for every supported model.
Autocorrelation analytic_autocorrelation(const ModelSpec& spec, std::int64_t M);

/// Raw pair sums c(m) = sum_i w_i w_{i+m} restricted to the window, for
/// m in [-(L-1), L-1], stored at index m + L - 1. Used for finite-size
/// Wiener-Khinchin checks; O(L^2).
std::vector<double> windowed_pair_sums(std::span<const double> weights);

struct HomometryReport {
    double distance = 0.0;
    double tolerance = 0.0;
    std::int64_t worst_lag = 0;
    bool pass = false;
};

/// max_m |x.eta(m) - y.eta(m)| against `tol`. Throws ValidationError on lag mismatch.
HomometryReport compare_autocorrelations(const Autocorrelation& x, const Autocorrelation& y, double tol);

// ---------------------------------------------------------------------------
// Exact check of the Rudin-Shapiro correlation recursions.
//
// a_t is the autocorrelation at lag t, b_t the same sum twisted by (-1)^n.
// Writing t = 4m + l (Euclidean) and s = (-1)^m:
//
//   a_{4m}   = (1+s)/2 a_m                       b_{4m}   = 0
//   a_{4m+1} = (1-s)/4 a_m + s/4 b_m - 1/4 b_{m+1}
//   a_{4m+2} = 0                                  b_{4m+2} = s/2 b_m + 1/2 b_{m+1}
//   a_{4m+3} = (1+s)/4 a_{m+1} - s/4 b_m + 1/4 b_{m+1}
//   b_{4m+1} = (1-s)/4 a_m - s/4 b_m + 1/4 b_{m+1}
//   b_{4m+3} = -(1+s)/4 a_{m+1} - s/4 b_m + 1/4 b_{m+1}
// ---------------------------------------------------------------------------

using Exact = boost::rational<std::int64_t>;

struct RSCorrelationPair {
    std::int64_t index = 0;
    Exact a;
    Exact b;
};

struct RecursionViolation {
    std::string branch;  // e.g. "a_{4m+1}"
    std::int64_t index = 0;
    Exact lhs;
    Exact rhs;
};

struct RecursionReport {
    std::int64_t max_index = 0;
    std::int64_t checked = 0;
    std::vector<RecursionViolation> violations;

    bool passed() const noexcept { return violations.empty(); }
};

/// Candidate values for (a_t, b_t) at any integer t.
using CorrelationCandidate = std::function<RSCorrelationPair(std::int64_t)>;

/// Substitutes `candidate` into both branches of both systems for every
/// |t| <= max_index and records every equation that fails exactly.
RecursionReport check_rs_recursions(std::int64_t max_index, const CorrelationCandidate& candidate);

/// check_rs_recursions() with a_0 = 1, b_0 = 0 and a_t = b_t = 0 otherwise.
/// Throws ValidationError if max_index < 1.
RecursionReport verify_rs_recursions(std::int64_t max_index);

/// Solves the recursions forward from a_0 = 1, b_0 = 0 for |t| <= max_index.
/// The equations at t = 1 and t = -1 reference b_t itself; those fixed points
/// are solved exactly. Returns pairs ordered by index.
std::vector<RSCorrelationPair> solve_rs_recursions(std::int64_t max_index);

} // namespace dirac

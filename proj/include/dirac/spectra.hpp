#pragma once

#include "dirac/combs.hpp"
#include "dirac/correlation.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dirac {

/// Finite-size diffraction intensity
///
///   I_N(k) = |sum_{n=-N}^{N} w_n exp(-2 pi i k n)|^2 / (2N + 1)
///
/// sampled at k = j / G for j in [0, G). The support of the comb is the
/// integers, so I_N is 1-periodic and only [0, 1) is stored.
struct Periodogram {
    std::int64_t grid_size = 0;
    std::vector<double> intensities;
    std::int64_t window_half_size = 0;

    double k(std::int64_t j) const { return static_cast<double>(j) / static_cast<double>(grid_size); }
    double mean() const;
    double max() const;
};

struct BraggPeak {
    Exact position;  // in [0, 1)
    double weight = 0.0;
};

/// Closed-form diffraction over one period: Bragg peaks plus a constant
/// absolutely continuous density. Singular continuous parts are not
/// represented; every model in the catalogue has none.
struct SpectralMeasure {
    static constexpr std::string_view singular_continuous = "none-modelled";

    std::vector<BraggPeak> bragg;  // sorted by position, weights > 0
    double ac_level = 0.0;

    double total() const;
};

/// Intensity of `spec` on [-N, N] via FFTW. When G < 2N + 1 the weights are
/// folded modulo G first, which is exact on the grid.
Periodogram periodogram(const ModelSpec& spec, std::int64_t N, std::int64_t G);

/// Same for an existing window, which must cover [-N, N].
Periodogram periodogram_of_window(const WeightWindow& window, std::int64_t N, std::int64_t G);

/// Mean periodogram over `seeds` for stochastic specs; a single periodogram
/// for deterministic ones. Members run in parallel and are summed in seed order.
Periodogram ensemble_periodogram(const ModelSpec& spec, std::int64_t N, std::int64_t G,
                                 std::span<const Seed> seeds);

/// mass(b) = (1/G) sum_{j in bin b} I(j/G). Throws ValidationError unless bins divides G.
std::vector<double> binned_measure(const Periodogram& pg, std::int64_t bins);

/// Average density (mass * bins) over bins that contain none of `exclude`.
/// Throws ValidationError if every bin is excluded.
double diffuse_level(std::span<const double> masses, std::span<const Exact> exclude);

struct BraggEstimate {
    Exact k0;
    std::int64_t grid_size = 0;
    std::vector<std::int64_t> half_sizes;
    std::vector<double> intensities;  // I_N(k0), ensemble mean for stochastic specs
    std::vector<double> weights;      // I_N(k0) / (2N + 1)
    double limit = 0.0;               // weight at the largest N
    /// Slope of log I_N(k0) against log(2N + 1) between the smallest and
    /// largest N: about 1 on a Bragg peak, about 0 or below on diffuse intensity.
    double growth_exponent = 0.0;
    std::string classification;  // "pure_point", "continuous", "absent" or "undetermined"
};

/// Bragg weight at rational k0 for each N in `half_sizes` (strictly increasing).
/// k0 must lie on the grid j/G; throws ValidationError otherwise.
BraggEstimate bragg_weight(const ModelSpec& spec, const Exact& k0, std::span<const std::int64_t> half_sizes,
                           std::int64_t G, std::span<const Seed> seeds);

/// Limiting diffraction for every supported model.
SpectralMeasure analytic_diffraction(const ModelSpec& spec);

struct SpectralHomometryReport {
    std::vector<double> masses_a;
    std::vector<double> masses_b;
    double max_discrepancy = 0.0;
    std::int64_t worst_bin = 0;
    double tolerance = 0.0;
    bool pass = false;
};

/// Compares the binned (ensemble-mean) diffraction of two models.
SpectralHomometryReport spectral_homometry(const ModelSpec& a, const ModelSpec& b, std::int64_t N,
                                           std::int64_t G, std::int64_t bins, double tol,
                                           std::span<const Seed> seeds);

/// Seeds 1..count, the default ensemble.
std::vector<Seed> default_seeds(std::size_t count = 50);

} // namespace dirac

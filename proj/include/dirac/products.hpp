#pragma once

#include "dirac/combs.hpp"
#include "dirac/correlation.hpp"
#include "dirac/spectra.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace dirac {

/// Two-dimensional comb with weights W(n1, n2) = w1(n1) * w2(n2), evaluated
/// on demand from the factor windows.
struct ProductWindow {
    WeightWindow first;
    WeightWindow second;

    double weight(std::int64_t n1, std::int64_t n2) const { return first.at(n1) * second.at(n2); }
};

/// Coefficients eta(m1, m2) on [-M, M]^2.
struct Autocorrelation2D {
    std::int64_t max_lag = 0;
    std::vector<double> eta;  // row-major, index (m1 + M) * (2M + 1) + (m2 + M)
    std::optional<std::int64_t> window_half_size;

    double at(std::int64_t m1, std::int64_t m2) const
    {
        const auto side = 2 * max_lag + 1;
        return eta.at(static_cast<std::size_t>((m1 + max_lag) * side + (m2 + max_lag)));
    }
};

/// eta(m1, m2) = eta_a(m1) * eta_b(m2). Throws ValidationError on lag mismatch.
Autocorrelation2D product_autocorrelation(const Autocorrelation& a, const Autocorrelation& b);

/// Direct estimate over the square [-N, N]^2 of a product window covering
/// [-N - M, N + M] in both directions, with the same per-axis reflection
/// averaging as the 1D estimator:
///
///   eta(m1, m2) = 1/4 sum_{s1, s2 = +-1} S(s1 m1, s2 m2) / (2N + 1)^2.
///
/// O(N^2 M^2); meant for small N.
Autocorrelation2D autocorrelation_2d(const ProductWindow& window, std::int64_t N, std::int64_t M);

struct BraggPeak2D {
    Exact k1;
    Exact k2;
    double weight = 0.0;
};

/// Bragg-by-continuous line: a uniform density `density` along the line
/// through `position` in the Bragg direction.
struct SpectralLine {
    Exact position;
    double density = 0.0;
};

/// Product of two 1D spectral measures over the unit cell [0, 1)^2.
struct SpectralMeasure2D {
    std::vector<BraggPeak2D> bragg;        // pp x pp
    std::vector<SpectralLine> lines_k1;    // pp x ac: lines k1 = position
    std::vector<SpectralLine> lines_k2;    // ac x pp: lines k2 = position
    double ac_level = 0.0;                 // ac x ac

    double total() const;
};

SpectralMeasure2D product_diffraction(const SpectralMeasure& a, const SpectralMeasure& b);

} // namespace dirac

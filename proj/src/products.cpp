#include "dirac/products.hpp"

#include "dirac/limits.hpp"

namespace dirac {

namespace {

double sum_2d(const ProductWindow& w, std::int64_t N, std::int64_t m1, std::int64_t m2)
{
    double s = 0.0;
    for (std::int64_t n1 = -N; n1 <= N; ++n1) {
        for (std::int64_t n2 = -N; n2 <= N; ++n2) {
            s += w.weight(n1, n2) * w.weight(n1 + m1, n2 + m2);
        }
    }
    return s;
}

} // namespace

Autocorrelation2D product_autocorrelation(const Autocorrelation& a, const Autocorrelation& b)
{
    if (a.max_lag != b.max_lag) {
        throw ValidationError("factor autocorrelations have different lag ranges: " + std::to_string(a.max_lag)
                              + " vs " + std::to_string(b.max_lag));
    }
    const auto M = a.max_lag;
    const auto side = static_cast<std::size_t>(2 * M + 1);
    Autocorrelation2D out{M, std::vector<double>(side * side), std::nullopt};
    if (a.window_half_size && b.window_half_size && *a.window_half_size == *b.window_half_size) {
        out.window_half_size = a.window_half_size;
    }
    for (std::size_t i = 0; i < side; ++i) {
        for (std::size_t j = 0; j < side; ++j) {
            out.eta[i * side + j] = a.eta[i] * b.eta[j];
        }
    }
    return out;
}

Autocorrelation2D autocorrelation_2d(const ProductWindow& window, std::int64_t N, std::int64_t M)
{
    if (N < 1 || M < 0) {
        throw ValidationError("autocorrelation_2d needs N >= 1 and M >= 0");
    }
    for (const auto* f : {&window.first, &window.second}) {
        if (!f->contains(-N - M) || !f->contains(N + M)) {
            throw ValidationError("product window factors must cover [" + std::to_string(-N - M) + ", "
                                  + std::to_string(N + M) + "]");
        }
    }
    const auto side = static_cast<std::size_t>(2 * M + 1);
    Autocorrelation2D out{M, std::vector<double>(side * side), N};
    const double norm = static_cast<double>(2 * N + 1) * static_cast<double>(2 * N + 1);
    for (std::int64_t m1 = -M; m1 <= M; ++m1) {
        for (std::int64_t m2 = -M; m2 <= M; ++m2) {
            const double s = sum_2d(window, N, m1, m2) + sum_2d(window, N, -m1, m2)
                             + sum_2d(window, N, m1, -m2) + sum_2d(window, N, -m1, -m2);
            out.eta[static_cast<std::size_t>((m1 + M) * (2 * M + 1) + (m2 + M))] = s / (4.0 * norm);
        }
    }
    return out;
}

double SpectralMeasure2D::total() const
{
    double s = ac_level;
    for (const auto& p : bragg) {
        s += p.weight;
    }
    for (const auto& l : lines_k1) {
        s += l.density;
    }
    for (const auto& l : lines_k2) {
        s += l.density;
    }
    return s;
}

SpectralMeasure2D product_diffraction(const SpectralMeasure& a, const SpectralMeasure& b)
{
    SpectralMeasure2D out;
    for (const auto& pa : a.bragg) {
        for (const auto& pb : b.bragg) {
            out.bragg.push_back({pa.position, pb.position, pa.weight * pb.weight});
        }
    }
    if (b.ac_level > 0.0) {
        for (const auto& pa : a.bragg) {
            out.lines_k1.push_back({pa.position, pa.weight * b.ac_level});
        }
    }
    if (a.ac_level > 0.0) {
        for (const auto& pb : b.bragg) {
            out.lines_k2.push_back({pb.position, a.ac_level * pb.weight});
        }
    }
    out.ac_level = a.ac_level * b.ac_level;
    return out;
}

} // namespace dirac

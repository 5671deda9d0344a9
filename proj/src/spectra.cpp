#include "dirac/spectra.hpp"

#include "dirac/limits.hpp"
#include "dirac/parallel.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>

namespace dirac {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// FFTW planning is not thread-safe; execution is.
std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}

struct FftwFree {
    void operator()(void* p) const { fftw_free(p); }
};

struct PlanDeleter {
    void operator()(fftw_plan_s* p) const
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(p);
    }
};

// |DFT|^2 of a real sequence of length G, all G bins.
std::vector<double> power_spectrum(const std::vector<double>& input)
{
    const auto G = static_cast<int>(input.size());
    const auto bins = static_cast<std::size_t>(G / 2 + 1);
    std::unique_ptr<double, FftwFree> in(static_cast<double*>(fftw_malloc(sizeof(double) * input.size())));
    std::unique_ptr<fftw_complex, FftwFree> out(
        static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * bins)));
    std::unique_ptr<fftw_plan_s, PlanDeleter> plan;
    {
        std::lock_guard lock(planner_mutex());
        plan.reset(fftw_plan_dft_r2c_1d(G, in.get(), out.get(), FFTW_ESTIMATE));
    }
    std::copy(input.begin(), input.end(), in.get());
    fftw_execute(plan.get());

    std::vector<double> power(input.size());
    for (std::size_t j = 0; j < bins; ++j) {
        const double re = out.get()[j][0];
        const double im = out.get()[j][1];
        power[j] = re * re + im * im;
    }
    // real input: X_{G-j} = conj(X_j)
    for (std::size_t j = bins; j < input.size(); ++j) {
        power[j] = power[input.size() - j];
    }
    return power;
}

void check_grid(std::int64_t N, std::int64_t G)
{
    if (N < 1) {
        throw ValidationError("window half-size N must be positive, got " + std::to_string(N));
    }
    if (G < 1) {
        throw ValidationError("grid size G must be positive, got " + std::to_string(G));
    }
    check_window_length(static_cast<std::size_t>(G), "periodogram grid");
}

std::int64_t bin_of(const Exact& x, std::int64_t bins)
{
    // floor(x * bins) for x in [0, 1)
    const Exact scaled = x * Exact(bins);
    return boost::rational_cast<std::int64_t>(Exact(scaled.numerator() / scaled.denominator()));
}

Exact reduce_unit(const Exact& x)
{
    // x mod 1 in [0, 1)
    auto whole = x.numerator() / x.denominator();
    if (x.numerator() < 0 && x.numerator() % x.denominator() != 0) {
        --whole;
    }
    return x - Exact(whole);
}

SpectralMeasure periodic_diffraction(const std::vector<double>& pattern)
{
    const auto q = static_cast<std::int64_t>(pattern.size());
    double total = 0.0;
    for (double c : pattern) {
        total += c * c;
    }
    total /= static_cast<double>(q);

    SpectralMeasure out;
    for (std::int64_t j = 0; j < q; ++j) {
        std::complex<double> amp{0.0, 0.0};
        for (std::int64_t n = 0; n < q; ++n) {
            // (j n mod q) keeps the phase argument small
            const double phase = -2.0 * std::numbers::pi * static_cast<double>((j * n) % q) / static_cast<double>(q);
            amp += pattern[static_cast<std::size_t>(n)] * std::polar(1.0, phase);
        }
        amp /= static_cast<double>(q);
        const double weight = std::norm(amp);
        if (weight > 1e-12 * total) {
            out.bragg.push_back({Exact(j, q), weight});
        }
    }
    return out;
}

} // namespace

double Periodogram::mean() const
{
    if (intensities.empty()) {
        return 0.0;
    }
    return std::accumulate(intensities.begin(), intensities.end(), 0.0) / static_cast<double>(intensities.size());
}

double Periodogram::max() const
{
    return intensities.empty() ? 0.0 : *std::max_element(intensities.begin(), intensities.end());
}

double SpectralMeasure::total() const
{
    double s = ac_level;
    for (const auto& peak : bragg) {
        s += peak.weight;
    }
    return s;
}

Periodogram periodogram_of_window(const WeightWindow& window, std::int64_t N, std::int64_t G)
{
    check_grid(N, G);
    if (!window.contains(-N) || !window.contains(N)) {
        throw ValidationError("periodogram needs weights on [" + std::to_string(-N) + ", " + std::to_string(N) + "]");
    }
    std::vector<double> folded(static_cast<std::size_t>(G), 0.0);
    for (std::int64_t n = -N; n <= N; ++n) {
        const auto r = ((n % G) + G) % G;
        folded[static_cast<std::size_t>(r)] += window.at(n);
    }
    auto power = power_spectrum(folded);
    const double norm = static_cast<double>(2 * N + 1);
    for (auto& v : power) {
        v /= norm;
    }
    return {G, std::move(power), N};
}

Periodogram periodogram(const ModelSpec& spec, std::int64_t N, std::int64_t G)
{
    check_grid(N, G);
    check_window_length(static_cast<std::size_t>(2 * N + 1), "periodogram");
    return periodogram_of_window(generate_window(spec, -N, N), N, G);
}

Periodogram ensemble_periodogram(const ModelSpec& spec, std::int64_t N, std::int64_t G, std::span<const Seed> seeds)
{
    if (!spec.is_stochastic()) {
        return periodogram(spec, N, G);
    }
    if (seeds.empty()) {
        throw ValidationError("stochastic model needs at least one seed");
    }
    check_grid(N, G);
    check_window_length(static_cast<std::size_t>(2 * N + 1), "periodogram");
    auto members = parallel_map(seeds.size(), [&](std::size_t i) {
        return periodogram(spec.with_seed(seeds[i]), N, G).intensities;
    });
    Periodogram out{G, std::vector<double>(static_cast<std::size_t>(G), 0.0), N};
    for (const auto& member : members) {
        for (std::size_t j = 0; j < member.size(); ++j) {
            out.intensities[j] += member[j];
        }
    }
    for (auto& v : out.intensities) {
        v /= static_cast<double>(seeds.size());
    }
    return out;
}

std::vector<double> binned_measure(const Periodogram& pg, std::int64_t bins)
{
    if (bins < 1 || pg.grid_size % bins != 0) {
        throw ValidationError("bins (" + std::to_string(bins) + ") must divide the grid size ("
                              + std::to_string(pg.grid_size) + ")");
    }
    const auto per_bin = static_cast<std::size_t>(pg.grid_size / bins);
    std::vector<double> mass(static_cast<std::size_t>(bins), 0.0);
    for (std::size_t j = 0; j < pg.intensities.size(); ++j) {
        mass[j / per_bin] += pg.intensities[j];
    }
    for (auto& m : mass) {
        m /= static_cast<double>(pg.grid_size);
    }
    return mass;
}

double diffuse_level(std::span<const double> masses, std::span<const Exact> exclude)
{
    const auto bins = static_cast<std::int64_t>(masses.size());
    std::vector<bool> skip(masses.size(), false);
    for (const auto& x : exclude) {
        skip[static_cast<std::size_t>(bin_of(reduce_unit(x), bins))] = true;
    }
    double sum = 0.0;
    std::int64_t used = 0;
    for (std::int64_t b = 0; b < bins; ++b) {
        if (!skip[static_cast<std::size_t>(b)]) {
            sum += masses[static_cast<std::size_t>(b)];
            ++used;
        }
    }
    if (used == 0) {
        throw ValidationError("every bin contains an excluded position");
    }
    return sum * static_cast<double>(bins) / static_cast<double>(used);
}

BraggEstimate bragg_weight(const ModelSpec& spec, const Exact& k0, std::span<const std::int64_t> half_sizes,
                           std::int64_t G, std::span<const Seed> seeds)
{
    if (k0 < Exact(0) || k0 >= Exact(1)) {
        throw ValidationError("k0 must lie in [0, 1)");
    }
    if (G < 1 || G % k0.denominator() != 0) {
        throw ValidationError("k0 = " + std::to_string(k0.numerator()) + "/" + std::to_string(k0.denominator())
                              + " is not on the grid j/" + std::to_string(G));
    }
    if (half_sizes.empty()) {
        throw ValidationError("bragg_weight needs at least one window half-size");
    }
    if (!std::is_sorted(half_sizes.begin(), half_sizes.end(), std::less_equal<>{})) {
        throw ValidationError("window half-sizes must be strictly increasing");
    }
    const auto j0 = static_cast<std::size_t>(k0.numerator() * (G / k0.denominator()));

    BraggEstimate est;
    est.k0 = k0;
    est.grid_size = G;
    est.half_sizes.assign(half_sizes.begin(), half_sizes.end());
    for (const auto N : half_sizes) {
        const auto pg = ensemble_periodogram(spec, N, G, seeds);
        const double intensity = pg.intensities[j0];
        est.intensities.push_back(intensity);
        est.weights.push_back(intensity / static_cast<double>(2 * N + 1));
    }
    est.limit = est.weights.back();

    const double first = est.intensities.front();
    const double last = est.intensities.back();
    const double scale = static_cast<double>(2 * half_sizes.back() + 1);
    if (last <= 1e-12 * scale) {
        est.growth_exponent = std::nan("");
        est.classification = "absent";
    } else if (half_sizes.size() < 2 || first <= 0.0) {
        est.growth_exponent = std::nan("");
        est.classification = "undetermined";
    } else {
        const double span = std::log(scale / static_cast<double>(2 * half_sizes.front() + 1));
        est.growth_exponent = std::log(last / first) / span;
        est.classification = est.growth_exponent > 0.5 ? "pure_point" : "continuous";
    }
    return est;
}

SpectralMeasure analytic_diffraction(const ModelSpec& spec)
{
    return std::visit(
        overloaded{
            [](const model::Constant& c) {
                SpectralMeasure out;
                if (c.w != 0.0) {
                    out.bragg.push_back({Exact(0), c.w * c.w});
                }
                return out;
            },
            [](const model::Periodic& c) { return periodic_diffraction(c.pattern); },
            [](const model::Alternating&) {
                SpectralMeasure out;
                out.bragg.push_back({Exact(1, 2), 1.0});
                return out;
            },
            [](const model::RudinShapiro&) {
                SpectralMeasure out;
                out.ac_level = 1.0;
                return out;
            },
            [](const model::Bernoulli& b) {
                SpectralMeasure out;
                const double bias = 2.0 * b.p - 1.0;
                if (bias != 0.0) {
                    out.bragg.push_back({Exact(0), bias * bias});
                }
                out.ac_level = 4.0 * b.p * (1.0 - b.p);
                return out;
            },
            [](const model::Bernoullised& b) {
                // gamma = (2p-1)^2 gamma_base + 4p(1-p) delta_0
                SpectralMeasure out;
                const double scale = (2.0 * b.p - 1.0) * (2.0 * b.p - 1.0);
                if (scale != 0.0) {
                    out = analytic_diffraction(*b.base);
                    for (auto& peak : out.bragg) {
                        peak.weight *= scale;
                    }
                    out.ac_level *= scale;
                }
                out.ac_level += 4.0 * b.p * (1.0 - b.p);
                return out;
            },
        },
        spec.variant());
}

SpectralHomometryReport spectral_homometry(const ModelSpec& a, const ModelSpec& b, std::int64_t N, std::int64_t G,
                                           std::int64_t bins, double tol, std::span<const Seed> seeds)
{
    if (!(tol > 0.0)) {
        throw ValidationError("tolerance must be positive");
    }
    SpectralHomometryReport report;
    report.masses_a = binned_measure(ensemble_periodogram(a, N, G, seeds), bins);
    report.masses_b = binned_measure(ensemble_periodogram(b, N, G, seeds), bins);
    report.tolerance = tol;
    for (std::size_t i = 0; i < report.masses_a.size(); ++i) {
        const double d = std::abs(report.masses_a[i] - report.masses_b[i]);
        if (d > report.max_discrepancy) {
            report.max_discrepancy = d;
            report.worst_bin = static_cast<std::int64_t>(i);
        }
    }
    report.pass = report.max_discrepancy <= tol;
    return report;
}

std::vector<Seed> default_seeds(std::size_t count)
{
    std::vector<Seed> seeds(count);
    std::iota(seeds.begin(), seeds.end(), Seed{1});
    return seeds;
}

} // namespace dirac

#include "dirac/order.hpp"

#include "dirac/limits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <unordered_map>

namespace dirac {

namespace {

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

struct Symbols {
    std::vector<std::uint64_t> ids;
    std::uint64_t alphabet = 0;
};

Symbols symbolise(std::span<const double> weights)
{
    std::map<double, std::uint64_t> index;
    for (double w : weights) {
        index.emplace(w, 0);
    }
    std::uint64_t next = 0;
    for (auto& [w, id] : index) {
        id = next++;
    }
    Symbols out;
    out.alphabet = next;
    out.ids.reserve(weights.size());
    for (double w : weights) {
        out.ids.push_back(index.at(w));
    }
    return out;
}

// Codes of all length-L words, base = max(alphabet, 2).
std::vector<std::uint64_t> word_codes(const Symbols& s, std::int64_t L)
{
    const std::uint64_t base = std::max<std::uint64_t>(s.alphabet, 2);
    const double bits = static_cast<double>(L) * std::log2(static_cast<double>(base));
    if (bits > 63.0) {
        throw ValidationError("words of length " + std::to_string(L) + " over an alphabet of "
                              + std::to_string(s.alphabet) + " symbols do not fit in 64 bits");
    }
    const auto n = static_cast<std::int64_t>(s.ids.size());
    if (L > n) {
        return {};
    }
    std::uint64_t top = 1;
    for (std::int64_t i = 1; i < L; ++i) {
        top *= base;
    }
    std::vector<std::uint64_t> codes;
    codes.reserve(static_cast<std::size_t>(n - L + 1));
    std::uint64_t code = 0;
    for (std::int64_t i = 0; i < L; ++i) {
        code = code * base + s.ids[static_cast<std::size_t>(i)];
    }
    codes.push_back(code);
    for (std::int64_t i = L; i < n; ++i) {
        code = (code - s.ids[static_cast<std::size_t>(i - L)] * top) * base + s.ids[static_cast<std::size_t>(i)];
        codes.push_back(code);
    }
    return codes;
}

std::int64_t distinct(std::vector<std::uint64_t> codes)
{
    std::sort(codes.begin(), codes.end());
    return std::unique(codes.begin(), codes.end()) - codes.begin();
}

void check_positive(std::int64_t v, const char* name)
{
    if (v < 1) {
        throw ValidationError(std::string(name) + " must be positive, got " + std::to_string(v));
    }
}

} // namespace

double bernoulli_entropy(double p)
{
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ValidationError("entropy needs p in [0, 1], got " + std::to_string(p));
    }
    return -xlogx(p) - xlogx(1.0 - p);
}

double model_entropy(const ModelSpec& spec)
{
    if (const auto* b = std::get_if<model::Bernoulli>(&spec.variant())) {
        return bernoulli_entropy(b->p);
    }
    if (const auto* b = std::get_if<model::Bernoullised>(&spec.variant())) {
        return bernoulli_entropy(b->p);
    }
    return 0.0;
}

double block_entropy_of_window(std::span<const double> weights, std::int64_t k)
{
    check_positive(k, "block length k");
    if (static_cast<std::int64_t>(weights.size()) < k) {
        throw ValidationError("window shorter than block length");
    }
    const auto codes = word_codes(symbolise(weights), k);
    std::unordered_map<std::uint64_t, std::int64_t> counts;
    for (auto c : codes) {
        ++counts[c];
    }
    const double total = static_cast<double>(codes.size());
    double h = 0.0;
    for (const auto& [code, count] : counts) {
        h -= xlogx(static_cast<double>(count) / total);
    }
    return h / static_cast<double>(k);
}

double block_entropy(const ModelSpec& spec, std::int64_t N, std::int64_t k)
{
    check_positive(N, "window half-size N");
    check_positive(k, "block length k");
    if (k > 40 || static_cast<double>(2 * N + 1) < 100.0 * std::ldexp(1.0, static_cast<int>(k))) {
        throw ValidationError("block entropy with k = " + std::to_string(k) + " needs 2N + 1 >= 100 * 2^k");
    }
    const auto window = generate_window(spec, -N, N);
    return block_entropy_of_window(window.weights, k);
}

std::vector<std::int64_t> count_patches(std::span<const double> weights, std::int64_t L_max)
{
    check_positive(L_max, "L_max");
    const auto symbols = symbolise(weights);
    std::vector<std::int64_t> counts;
    counts.reserve(static_cast<std::size_t>(L_max));
    for (std::int64_t L = 1; L <= L_max; ++L) {
        counts.push_back(distinct(word_codes(symbols, L)));
    }
    return counts;
}

std::vector<PatchCount> patch_complexity(const ModelSpec& spec, std::int64_t N, std::int64_t L_max)
{
    if (spec.is_stochastic()) {
        throw ValidationError("patch complexity of a stochastic model is 2^L almost surely; use a deterministic model");
    }
    check_positive(N, "window half-size N");
    check_positive(L_max, "L_max");
    if (2 * N + 1 < 100 * L_max) {
        throw ValidationError("patch complexity needs 2N + 1 >= 100 * L_max");
    }
    check_window_length(static_cast<std::size_t>(4 * N + 1), "patch_complexity");
    const auto wide = generate_window(spec, -2 * N, 2 * N);
    const auto small = count_patches(wide.slice(-N, N), L_max);
    const auto large = count_patches(wide.weights, L_max);

    std::vector<PatchCount> out;
    for (std::int64_t L = 1; L <= L_max; ++L) {
        const auto i = static_cast<std::size_t>(L - 1);
        out.push_back({L, small[i], small[i] == large[i]});
    }
    return out;
}

EntropyReport entropy_report(const ModelSpec& spec, std::int64_t N, std::int64_t k, std::int64_t L_max)
{
    EntropyReport report{spec, model_entropy(spec), k, block_entropy(spec, N, k), {}};
    if (!spec.is_stochastic()) {
        report.patch_counts = patch_complexity(spec, N, L_max);
    }
    return report;
}

} // namespace dirac

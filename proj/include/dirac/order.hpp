#pragma once

#include "dirac/combs.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace dirac {

/// H(p) = -p log p - (1-p) log(1-p), natural log, 0 log 0 = 0.
/// Throws ValidationError outside [0, 1].
double bernoulli_entropy(double p);

/// Metric entropy per symbol of the model: 0 for the deterministic models
/// (all have linear or constant complexity), H(p) for Bernoulli and
/// Bernoullised combs.
double model_entropy(const ModelSpec& spec);

/// H_k / k for the empirical distribution of length-k words in a sliding
/// window over `weights`. Distinct weight values are the alphabet.
double block_entropy_of_window(std::span<const double> weights, std::int64_t k);

/// block_entropy_of_window() over the window [-N, N] of `spec`.
/// Requires 2N + 1 >= 100 * 2^k so word frequencies are resolved.
double block_entropy(const ModelSpec& spec, std::int64_t N, std::int64_t k);

struct PatchCount {
    std::int64_t length = 0;
    std::int64_t count = 0;
    /// Count unchanged when the window is doubled to [-2N, 2N].
    bool saturated = false;
};

/// Number of distinct words of length L in `weights`, L = 1..L_max.
std::vector<std::int64_t> count_patches(std::span<const double> weights, std::int64_t L_max);

/// p(L) for L = 1..L_max on [-N, N], with the doubled window as saturation check.
/// Stochastic models are rejected: their complexity is 2^L almost surely.
std::vector<PatchCount> patch_complexity(const ModelSpec& spec, std::int64_t N, std::int64_t L_max);

struct EntropyReport {
    ModelSpec model;
    std::optional<double> exact_H;
    std::int64_t block_k = 0;
    double block_H_per_symbol = 0.0;
    std::vector<PatchCount> patch_counts;  // empty for stochastic models
};

EntropyReport entropy_report(const ModelSpec& spec, std::int64_t N, std::int64_t k, std::int64_t L_max);

} // namespace dirac

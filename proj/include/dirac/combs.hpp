#pragma once

#include "dirac/rng.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace dirac {

class ModelSpec;

namespace model {

/// w_n = w for every n.
struct Constant {
    double w = 1.0;
};

/// w_n = pattern[n mod q], Euclidean remainder, so pattern[0] sits at n = 0.
struct Periodic {
    std::vector<double> pattern;
};

/// w_n = (-1)^n.
struct Alternating {};

/// Binary Rudin-Shapiro chain, see rs_weight().
struct RudinShapiro {};

/// i.i.d. signs, +1 with probability p.
struct Bernoulli {
    double p = 0.5;
    Seed seed = 1;
};

/// Deterministic binary base with each sign flipped independently with
/// probability 1 - p.
struct Bernoullised {
    std::shared_ptr<const ModelSpec> base;
    double p = 0.5;
    Seed seed = 1;
};

} // namespace model

/// Immutable description of a Dirac comb on the integers. Construct through
/// the named factories, which validate their arguments.
class ModelSpec {
public:
    using Variant = std::variant<model::Constant, model::Periodic, model::Alternating,
                                 model::RudinShapiro, model::Bernoulli, model::Bernoullised>;

    static ModelSpec constant(double w);
    static ModelSpec periodic(std::vector<double> pattern);
    static ModelSpec alternating();
    static ModelSpec rudin_shapiro();
    static ModelSpec bernoulli(double p, Seed seed);
    /// Throws ValidationError unless `base` is deterministic and ±1-valued.
    static ModelSpec bernoullised(const ModelSpec& base, double p, Seed seed);

    const Variant& variant() const noexcept { return variant_; }

    /// Tag used in JSON: "constant", "periodic", "alternating",
    /// "rudin_shapiro", "bernoulli", "bernoullised".
    std::string name() const;

    bool is_stochastic() const noexcept;
    /// True when every weight is guaranteed to be +1 or -1.
    bool is_binary() const noexcept;

    std::optional<Seed> seed() const noexcept;
    /// Same model with a different seed; deterministic models are returned unchanged.
    ModelSpec with_seed(Seed seed) const;

    /// Weight w_n of the realisation selected by this spec (and its seed).
    double weight(std::int64_t n) const;

    friend bool operator==(const ModelSpec& a, const ModelSpec& b);

private:
    explicit ModelSpec(Variant v) : variant_(std::move(v)) {}
    Variant variant_;
};

/// Finite realisation covering [offset, offset + size() - 1].
struct WeightWindow {
    std::int64_t offset = 0;
    std::vector<double> weights;

    std::size_t size() const noexcept { return weights.size(); }
    std::int64_t first() const noexcept { return offset; }
    std::int64_t last() const noexcept { return offset + static_cast<std::int64_t>(weights.size()) - 1; }
    bool contains(std::int64_t n) const noexcept { return n >= first() && n <= last(); }

    /// Weight at absolute index n; n must lie inside the window.
    double at(std::int64_t n) const { return weights[static_cast<std::size_t>(n - offset)]; }

    /// Weights on the sub-range [first, last]; throws ValidationError if outside.
    std::span<const double> slice(std::int64_t first, std::int64_t last) const;

    friend bool operator==(const WeightWindow&, const WeightWindow&) = default;
};

/// Rudin-Shapiro weight w(n) for any integer n, from
///   w(4q + l) = w(q)                  for l in {0, 1}
///   w(4q + l) = (-1)^(q + l) w(q)     for l in {2, 3}
/// with w(0) = 1, w(-1) = -1. Division is Euclidean, so q moves strictly
/// towards the fixed points 0 (from above) or -1 (from below).
int rs_weight(std::int64_t n);

/// Weights of `spec` on [first, last]. Throws ValidationError if first > last
/// and ResourceError if the range exceeds max_window_length().
WeightWindow generate_window(const ModelSpec& spec, std::int64_t first, std::int64_t last);

/// Multiplies entry n of a ±1 window by the sign W_n keyed by (seed, n).
/// Matches generate_window(ModelSpec::bernoullised(base, p, seed), ...).
WeightWindow bernoullise(const WeightWindow& base, double p, Seed seed);

} // namespace dirac

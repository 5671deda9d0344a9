#include "dirac/combs.hpp"

#include "dirac/limits.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dirac {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_probability(double p)
{
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ValidationError("probability p must lie in [0, 1], got " + std::to_string(p));
    }
}

void check_finite(double w, const char* what)
{
    if (!std::isfinite(w)) {
        throw ValidationError(std::string(what) + " must be finite");
    }
}

bool is_sign(double w) { return w == 1.0 || w == -1.0; }

std::int64_t floor_div4(std::int64_t n)
{
    // arithmetic shift is floor division for two's complement
    return n >> 2;
}

std::int64_t euclid_mod(std::int64_t n, std::int64_t q)
{
    const auto r = n % q;
    return r < 0 ? r + q : r;
}

} // namespace

ModelSpec ModelSpec::constant(double w)
{
    check_finite(w, "constant weight w");
    return ModelSpec(model::Constant{w});
}

ModelSpec ModelSpec::periodic(std::vector<double> pattern)
{
    if (pattern.empty()) {
        throw ValidationError("periodic pattern must contain at least one weight");
    }
    for (double w : pattern) {
        check_finite(w, "periodic pattern entry");
    }
    return ModelSpec(model::Periodic{std::move(pattern)});
}

ModelSpec ModelSpec::alternating() { return ModelSpec(model::Alternating{}); }

ModelSpec ModelSpec::rudin_shapiro() { return ModelSpec(model::RudinShapiro{}); }

ModelSpec ModelSpec::bernoulli(double p, Seed seed)
{
    check_probability(p);
    return ModelSpec(model::Bernoulli{p, seed});
}

ModelSpec ModelSpec::bernoullised(const ModelSpec& base, double p, Seed seed)
{
    check_probability(p);
    if (base.is_stochastic()) {
        throw ValidationError("bernoullised base must be a deterministic model, got " + base.name());
    }
    if (!base.is_binary()) {
        throw ValidationError("bernoullised base must be ±1-valued, got " + base.name());
    }
    return ModelSpec(model::Bernoullised{std::make_shared<const ModelSpec>(base), p, seed});
}

std::string ModelSpec::name() const
{
    return std::visit(overloaded{
                          [](const model::Constant&) { return std::string("constant"); },
                          [](const model::Periodic&) { return std::string("periodic"); },
                          [](const model::Alternating&) { return std::string("alternating"); },
                          [](const model::RudinShapiro&) { return std::string("rudin_shapiro"); },
                          [](const model::Bernoulli&) { return std::string("bernoulli"); },
                          [](const model::Bernoullised&) { return std::string("bernoullised"); },
                      },
                      variant_);
}

bool ModelSpec::is_stochastic() const noexcept
{
    return std::holds_alternative<model::Bernoulli>(variant_)
           || std::holds_alternative<model::Bernoullised>(variant_);
}

bool ModelSpec::is_binary() const noexcept
{
    return std::visit(overloaded{
                          [](const model::Constant& c) { return is_sign(c.w); },
                          [](const model::Periodic& c) {
                              return std::all_of(c.pattern.begin(), c.pattern.end(), is_sign);
                          },
                          [](const auto&) { return true; },
                      },
                      variant_);
}

std::optional<Seed> ModelSpec::seed() const noexcept
{
    if (const auto* b = std::get_if<model::Bernoulli>(&variant_)) {
        return b->seed;
    }
    if (const auto* b = std::get_if<model::Bernoullised>(&variant_)) {
        return b->seed;
    }
    return std::nullopt;
}

ModelSpec ModelSpec::with_seed(Seed seed) const
{
    ModelSpec copy = *this;
    if (auto* b = std::get_if<model::Bernoulli>(&copy.variant_)) {
        b->seed = seed;
    } else if (auto* b = std::get_if<model::Bernoullised>(&copy.variant_)) {
        b->seed = seed;
    }
    return copy;
}

double ModelSpec::weight(std::int64_t n) const
{
    return std::visit(overloaded{
                          [](const model::Constant& c) { return c.w; },
                          [n](const model::Periodic& c) {
                              const auto q = static_cast<std::int64_t>(c.pattern.size());
                              return c.pattern[static_cast<std::size_t>(euclid_mod(n, q))];
                          },
                          [n](const model::Alternating&) { return (n & 1) ? -1.0 : 1.0; },
                          [n](const model::RudinShapiro&) { return static_cast<double>(rs_weight(n)); },
                          [n](const model::Bernoulli& b) {
                              return static_cast<double>(rng::bernoulli_sign(b.p, b.seed, n));
                          },
                          [n](const model::Bernoullised& b) {
                              return b.base->weight(n) * rng::bernoulli_sign(b.p, b.seed, n);
                          },
                      },
                      variant_);
}

bool operator==(const ModelSpec& a, const ModelSpec& b)
{
    if (a.variant_.index() != b.variant_.index()) {
        return false;
    }
    return std::visit(overloaded{
                          [&](const model::Constant& x) { return x.w == std::get<model::Constant>(b.variant_).w; },
                          [&](const model::Periodic& x) {
                              return x.pattern == std::get<model::Periodic>(b.variant_).pattern;
                          },
                          [](const model::Alternating&) { return true; },
                          [](const model::RudinShapiro&) { return true; },
                          [&](const model::Bernoulli& x) {
                              const auto& y = std::get<model::Bernoulli>(b.variant_);
                              return x.p == y.p && x.seed == y.seed;
                          },
                          [&](const model::Bernoullised& x) {
                              const auto& y = std::get<model::Bernoullised>(b.variant_);
                              return x.p == y.p && x.seed == y.seed && *x.base == *y.base;
                          },
                      },
                      a.variant_);
}

std::span<const double> WeightWindow::slice(std::int64_t lo, std::int64_t hi) const
{
    if (lo > hi || !contains(lo) || !contains(hi)) {
        throw ValidationError("slice [" + std::to_string(lo) + ", " + std::to_string(hi)
                              + "] is not inside window [" + std::to_string(first()) + ", "
                              + std::to_string(last()) + "]");
    }
    return std::span<const double>(weights).subspan(static_cast<std::size_t>(lo - offset),
                                                    static_cast<std::size_t>(hi - lo + 1));
}

int rs_weight(std::int64_t n)
{
    int sign = 1;
    while (n != 0 && n != -1) {
        const std::int64_t q = floor_div4(n);
        const std::int64_t l = n - 4 * q;
        if (l >= 2 && ((q + l) & 1) != 0) {
            sign = -sign;
        }
        n = q;
    }
    return n == 0 ? sign : -sign;
}

WeightWindow generate_window(const ModelSpec& spec, std::int64_t first, std::int64_t last)
{
    if (first > last) {
        throw ValidationError("window requires first <= last, got [" + std::to_string(first) + ", "
                              + std::to_string(last) + "]");
    }
    const auto length = static_cast<std::size_t>(last - first) + 1;
    check_window_length(length, "generate_window");

    WeightWindow window{first, std::vector<double>(length)};
    for (std::size_t i = 0; i < length; ++i) {
        window.weights[i] = spec.weight(first + static_cast<std::int64_t>(i));
    }
    return window;
}

WeightWindow bernoullise(const WeightWindow& base, double p, Seed seed)
{
    check_probability(p);
    WeightWindow out = base;
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double s = out.weights[i];
        if (!is_sign(s)) {
            throw ValidationError("bernoullise requires ±1 weights; index "
                                  + std::to_string(base.offset + static_cast<std::int64_t>(i))
                                  + " holds " + std::to_string(s));
        }
        out.weights[i] = s * rng::bernoulli_sign(p, seed, base.offset + static_cast<std::int64_t>(i));
    }
    return out;
}

} // namespace dirac

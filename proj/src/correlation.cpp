#include "dirac/correlation.hpp"

#include "dirac/limits.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <utility>

namespace dirac {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_lag_arguments(std::int64_t N, std::int64_t M)
{
    if (N < 1) {
        throw ValidationError("window half-size N must be positive, got " + std::to_string(N));
    }
    if (M < 0) {
        throw ValidationError("max lag M must be nonnegative, got " + std::to_string(M));
    }
}

double sum_products(const WeightWindow& w, std::int64_t N, std::int64_t m)
{
    double s = 0.0;
    for (std::int64_t n = -N; n <= N; ++n) {
        s += w.at(n) * w.at(n + m);
    }
    return s;
}

double analytic_eta(const ModelSpec& spec, std::int64_t m)
{
    return std::visit(
        overloaded{
            [](const model::Constant& c) { return c.w * c.w; },
            [m](const model::Periodic& c) {
                const auto q = static_cast<std::int64_t>(c.pattern.size());
                const auto shift = ((m % q) + q) % q;
                double s = 0.0;
                for (std::int64_t n = 0; n < q; ++n) {
                    s += c.pattern[static_cast<std::size_t>(n)]
                         * c.pattern[static_cast<std::size_t>((n + shift) % q)];
                }
                return s / static_cast<double>(q);
            },
            [m](const model::Alternating&) { return (m & 1) ? -1.0 : 1.0; },
            [m](const model::RudinShapiro&) { return m == 0 ? 1.0 : 0.0; },
            [m](const model::Bernoulli& b) {
                const double bias = 2.0 * b.p - 1.0;
                return m == 0 ? 1.0 : bias * bias;
            },
            [m](const model::Bernoullised& b) {
                const double bias = 2.0 * b.p - 1.0;
                return m == 0 ? 1.0 : bias * bias * analytic_eta(*b.base, m);
            },
        },
        spec.variant());
}

// One term coef * x_index of a recursion right-hand side; x is 'a' or 'b'.
struct Term {
    Exact coef;
    char var;
    std::int64_t index;
};

struct Equation {
    std::string branch;
    std::vector<Term> rhs;
};

// Branches for a_t and b_t with t = 4m + l.
std::pair<Equation, Equation> recursion_at(std::int64_t t)
{
    const std::int64_t m = t >> 2;
    const std::int64_t l = t - 4 * m;
    const Exact s((m & 1) ? -1 : 1);
    const Exact quarter(1, 4);
    const Exact half(1, 2);

    switch (l) {
    case 0:
        return {{"a_{4m}", {{(1 + s) * half, 'a', m}}}, {"b_{4m}", {}}};
    case 1:
        return {{"a_{4m+1}", {{(1 - s) * quarter, 'a', m}, {s * quarter, 'b', m}, {-quarter, 'b', m + 1}}},
                {"b_{4m+1}", {{(1 - s) * quarter, 'a', m}, {-s * quarter, 'b', m}, {quarter, 'b', m + 1}}}};
    case 2:
        return {{"a_{4m+2}", {}}, {"b_{4m+2}", {{s * half, 'b', m}, {half, 'b', m + 1}}}};
    default:
        return {{"a_{4m+3}", {{(1 + s) * quarter, 'a', m + 1}, {-s * quarter, 'b', m}, {quarter, 'b', m + 1}}},
                {"b_{4m+3}", {{-(1 + s) * quarter, 'a', m + 1}, {-s * quarter, 'b', m}, {quarter, 'b', m + 1}}}};
    }
}

} // namespace

Autocorrelation autocorrelation_of_window(const WeightWindow& window, std::int64_t N, std::int64_t M)
{
    check_lag_arguments(N, M);
    if (!window.contains(-N - M) || !window.contains(N + M)) {
        throw ValidationError("autocorrelation needs weights on [" + std::to_string(-N - M) + ", "
                              + std::to_string(N + M) + "]");
    }
    Autocorrelation out{M, std::vector<double>(static_cast<std::size_t>(2 * M + 1)), N};
    const double norm = static_cast<double>(2 * N + 1);
    out.eta[static_cast<std::size_t>(M)] = sum_products(window, N, 0) / norm;
    for (std::int64_t m = 1; m <= M; ++m) {
        const double v = (sum_products(window, N, m) + sum_products(window, N, -m)) / (2.0 * norm);
        out.eta[static_cast<std::size_t>(M + m)] = v;
        out.eta[static_cast<std::size_t>(M - m)] = v;
    }
    return out;
}

Autocorrelation empirical_autocorrelation(const ModelSpec& spec, std::int64_t N, std::int64_t M)
{
    check_lag_arguments(N, M);
    check_window_length(static_cast<std::size_t>(2 * N + 2 * M + 1), "empirical_autocorrelation");
    return autocorrelation_of_window(generate_window(spec, -N - M, N + M), N, M);
}

Autocorrelation analytic_autocorrelation(const ModelSpec& spec, std::int64_t M)
{
    if (M < 0) {
        throw ValidationError("max lag M must be nonnegative, got " + std::to_string(M));
    }
    Autocorrelation out{M, std::vector<double>(static_cast<std::size_t>(2 * M + 1)), std::nullopt};
    for (std::int64_t m = -M; m <= M; ++m) {
        out.eta[static_cast<std::size_t>(m + M)] = analytic_eta(spec, m);
    }
    return out;
}

std::vector<double> windowed_pair_sums(std::span<const double> w)
{
    const auto L = static_cast<std::int64_t>(w.size());
    if (L == 0) {
        return {};
    }
    std::vector<double> c(static_cast<std::size_t>(2 * L - 1), 0.0);
    for (std::int64_t m = 0; m < L; ++m) {
        double s = 0.0;
        for (std::int64_t i = 0; i + m < L; ++i) {
            s += w[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(i + m)];
        }
        c[static_cast<std::size_t>(L - 1 + m)] = s;
        c[static_cast<std::size_t>(L - 1 - m)] = s;
    }
    return c;
}

HomometryReport compare_autocorrelations(const Autocorrelation& x, const Autocorrelation& y, double tol)
{
    if (x.max_lag != y.max_lag) {
        throw ValidationError("autocorrelation lag ranges differ: " + std::to_string(x.max_lag) + " vs "
                              + std::to_string(y.max_lag));
    }
    if (!(tol > 0.0)) {
        throw ValidationError("tolerance must be positive");
    }
    HomometryReport report{0.0, tol, 0, false};
    for (std::int64_t m = -x.max_lag; m <= x.max_lag; ++m) {
        const double d = std::abs(x.at(m) - y.at(m));
        if (d > report.distance) {
            report.distance = d;
            report.worst_lag = m;
        }
    }
    report.pass = report.distance <= tol;
    return report;
}

RecursionReport check_rs_recursions(std::int64_t max_index, const CorrelationCandidate& candidate)
{
    RecursionReport report;
    report.max_index = max_index;

    auto value = [&](char var, std::int64_t i) {
        const auto pair = candidate(i);
        return var == 'a' ? pair.a : pair.b;
    };
    auto evaluate = [&](const Equation& eq) {
        Exact sum(0);
        for (const auto& term : eq.rhs) {
            sum += term.coef * value(term.var, term.index);
        }
        return sum;
    };

    for (std::int64_t t = -max_index; t <= max_index; ++t) {
        const auto [eq_a, eq_b] = recursion_at(t);
        const auto lhs = candidate(t);
        const Exact rhs_a = evaluate(eq_a);
        const Exact rhs_b = evaluate(eq_b);
        report.checked += 2;
        if (lhs.a != rhs_a) {
            report.violations.push_back({eq_a.branch, t, lhs.a, rhs_a});
        }
        if (lhs.b != rhs_b) {
            report.violations.push_back({eq_b.branch, t, lhs.b, rhs_b});
        }
    }
    return report;
}

RecursionReport verify_rs_recursions(std::int64_t max_index)
{
    if (max_index < 1) {
        throw ValidationError("verify_rs_recursions requires max index >= 1");
    }
    return check_rs_recursions(max_index, [](std::int64_t t) {
        return RSCorrelationPair{t, Exact(t == 0 ? 1 : 0), Exact(0)};
    });
}

std::vector<RSCorrelationPair> solve_rs_recursions(std::int64_t max_index)
{
    if (max_index < 1) {
        throw ValidationError("solve_rs_recursions requires max index >= 1");
    }
    std::map<std::int64_t, Exact> a{{0, Exact(1)}};
    std::map<std::int64_t, Exact> b{{0, Exact(0)}};

    auto lookup = [&](char var, std::int64_t i) -> const Exact& {
        const auto& table = var == 'a' ? a : b;
        const auto it = table.find(i);
        if (it == table.end()) {
            throw std::logic_error("recursion references unsolved index " + std::to_string(i));
        }
        return it->second;
    };

    // x_t = sum of terms, where terms in x_t itself are moved to the left.
    auto solve = [&](const Equation& eq, char var, std::int64_t t) {
        Exact self(0);
        Exact rest(0);
        for (const auto& term : eq.rhs) {
            if (term.var == var && term.index == t) {
                self += term.coef;
            } else {
                rest += term.coef * lookup(term.var, term.index);
            }
        }
        if (self == Exact(1)) {
            throw std::logic_error("recursion does not determine " + eq.branch + " at " + std::to_string(t));
        }
        return rest / (Exact(1) - self);
    };

    // |m|, |m+1| < |t| once |t| >= 2, so increasing |t| only reads solved entries;
    // b_t is solved before a_t because a_1 reads b_1.
    for (std::int64_t k = 1; k <= max_index; ++k) {
        for (const std::int64_t t : {k, -k}) {
            const auto [eq_a, eq_b] = recursion_at(t);
            b[t] = solve(eq_b, 'b', t);
            a[t] = solve(eq_a, 'a', t);
        }
    }

    std::vector<RSCorrelationPair> out;
    out.reserve(a.size());
    for (const auto& [t, av] : a) {
        out.push_back({t, av, b.at(t)});
    }
    return out;
}

} // namespace dirac

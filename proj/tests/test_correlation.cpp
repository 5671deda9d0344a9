#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "catalogue.hpp"
#include "dirac/correlation.hpp"
#include "dirac/limits.hpp"

#include <cmath>

using namespace dirac;

namespace {

// Naive estimator straight from the definition, one weight lookup at a time.
double naive_eta(const ModelSpec& spec, std::int64_t N, std::int64_t m)
{
    double plus = 0.0;
    double minus = 0.0;
    for (std::int64_t n = -N; n <= N; ++n) {
        plus += spec.weight(n) * spec.weight(n + m);
        minus += spec.weight(n) * spec.weight(n - m);
    }
    if (m == 0) {
        return plus / static_cast<double>(2 * N + 1);
    }
    return (plus + minus) / (2.0 * static_cast<double>(2 * N + 1));
}

} // namespace

TEST_CASE("empirical autocorrelation of the periodic examples is exact")
{
    for (const double w : {1.0, -1.0, 2.5}) {
        const auto acf = empirical_autocorrelation(ModelSpec::constant(w), 50, 10);
        for (std::int64_t m = -10; m <= 10; ++m) {
            CHECK(acf.at(m) == w * w);
        }
    }
    const auto alt = empirical_autocorrelation(ModelSpec::alternating(), 33, 12);
    for (std::int64_t m = -12; m <= 12; ++m) {
        CHECK(alt.at(m) == ((m % 2 == 0) ? 1.0 : -1.0));
    }
    CHECK(alt.window_half_size == 33);
    CHECK_FALSE(alt.is_analytic());
}

TEST_CASE("empirical autocorrelation equals the naive double loop for N <= 64")
{
    for (const auto& spec : testing::model_catalogue()) {
        CAPTURE(spec.name());
        for (const std::int64_t N : {1, 7, 64}) {
            const std::int64_t M = std::min<std::int64_t>(N, 9);
            const auto acf = empirical_autocorrelation(spec, N, M);
            for (std::int64_t m = -M; m <= M; ++m) {
                REQUIRE(acf.at(m) == naive_eta(spec, N, m));
            }
        }
    }
}

TEST_CASE("estimator symmetry, normalisation and Cauchy-Schwarz")
{
    for (const auto& spec : testing::model_catalogue()) {
        CAPTURE(spec.name());
        const auto acf = empirical_autocorrelation(spec, 300, 40);
        for (std::int64_t m = 1; m <= 40; ++m) {
            REQUIRE(acf.at(m) == acf.at(-m));
        }
        if (spec.is_binary()) {
            REQUIRE(acf.at(0) == 1.0);
            for (std::int64_t m = -40; m <= 40; ++m) {
                REQUIRE(std::abs(acf.at(m)) <= acf.at(0));
            }
        }
    }
}

TEST_CASE("Rudin-Shapiro correlations vanish off the origin")
{
    // calibrated: max_{1..64} |eta| ~ 1.1e-4 at N = 2^16
    const auto acf = empirical_autocorrelation(ModelSpec::rudin_shapiro(), 1 << 16, 64);
    CHECK(acf.at(0) == 1.0);
    for (std::int64_t m = 1; m <= 64; ++m) {
        REQUIRE(std::abs(acf.at(m)) <= 0.05);
    }
}

TEST_CASE("Bernoulli estimator mean converges to (2p-1)^2")
{
    constexpr int K = 100;
    constexpr std::int64_t N = 2000;
    for (const double p : {0.25, 0.5, 0.8}) {
        for (const std::int64_t m : {1, 5}) {
            double mean = 0.0;
            for (int s = 1; s <= K; ++s) {
                mean += empirical_autocorrelation(ModelSpec::bernoulli(p, static_cast<Seed>(s)), N, m).at(m);
            }
            mean /= K;
            const double bound = 2.0 * 4.0 / std::sqrt(static_cast<double>(K) * (2 * N + 1));
            CAPTURE(p);
            CAPTURE(m);
            CHECK(std::abs(mean - (2 * p - 1) * (2 * p - 1)) <= bound);
        }
    }
}

TEST_CASE("analytic autocorrelation closed forms")
{
    CHECK(analytic_autocorrelation(ModelSpec::bernoulli(0.5, 1), 3).at(3) == 0.0);
    CHECK(analytic_autocorrelation(ModelSpec::bernoulli(0.75, 1), 3).at(0) == 1.0);
    CHECK(analytic_autocorrelation(ModelSpec::bernoulli(0.75, 1), 3).at(-2) == 0.25);
    CHECK(analytic_autocorrelation(ModelSpec::periodic({1.0, -1.0}), 5).at(5) == -1.0);
    CHECK(analytic_autocorrelation(ModelSpec::constant(3.0), 2).at(1) == 9.0);

    const auto bs = analytic_autocorrelation(ModelSpec::bernoullised(ModelSpec::rudin_shapiro(), 0.3, 1), 8);
    CHECK(bs.at(0) == 1.0);
    for (std::int64_t m = 1; m <= 8; ++m) {
        CHECK(bs.at(m) == 0.0);
    }
    CHECK(bs.is_analytic());

    // Bernoullised periodic: (2p-1)^2 times the base coefficients
    const auto base = ModelSpec::periodic({1.0, 1.0, -1.0});
    const auto scaled = analytic_autocorrelation(ModelSpec::bernoullised(base, 0.8, 1), 4);
    const auto plain = analytic_autocorrelation(base, 4);
    for (std::int64_t m = 1; m <= 4; ++m) {
        CHECK(scaled.at(m) == doctest::Approx(0.36 * plain.at(m)));
    }
    CHECK(plain.at(1) == doctest::Approx(-1.0 / 3.0));
    CHECK(plain.at(3) == 1.0);
}

TEST_CASE("analytic and empirical agree for every deterministic periodic model")
{
    for (const auto& spec : testing::model_catalogue()) {
        if (spec.is_stochastic() || spec.name() == "rudin_shapiro") {
            continue;
        }
        CAPTURE(spec.name());
        const auto emp = empirical_autocorrelation(spec, 1200, 6);
        const auto ana = analytic_autocorrelation(spec, 6);
        for (std::int64_t m = -6; m <= 6; ++m) {
            CHECK(std::abs(emp.at(m) - ana.at(m)) <= 0.02);
        }
    }
}

TEST_CASE("compare_autocorrelations")
{
    const auto rs = analytic_autocorrelation(ModelSpec::rudin_shapiro(), 16);
    const auto report = compare_autocorrelations(rs, rs, 1e-12);
    CHECK(report.distance == 0.0);
    CHECK(report.pass);

    const auto coin = analytic_autocorrelation(ModelSpec::bernoulli(0.5, 1), 16);
    CHECK(compare_autocorrelations(rs, coin, 1e-12).distance == 0.0);

    const auto alt = analytic_autocorrelation(ModelSpec::alternating(), 16);
    const auto far = compare_autocorrelations(rs, alt, 0.5);
    CHECK(far.distance == 1.0);
    CHECK_FALSE(far.pass);

    const auto emp = empirical_autocorrelation(
        ModelSpec::bernoullised(ModelSpec::rudin_shapiro(), 0.25, 5), 1 << 16, 16);
    CHECK(compare_autocorrelations(emp, rs, 0.05).pass);

    CHECK_THROWS_AS(compare_autocorrelations(rs, analytic_autocorrelation(ModelSpec::rudin_shapiro(), 3), 0.1),
                    ValidationError);
    CHECK_THROWS_AS(compare_autocorrelations(rs, rs, 0.0), ValidationError);
}

TEST_CASE("argument validation")
{
    CHECK_THROWS_AS(empirical_autocorrelation(ModelSpec::alternating(), 0, 1), ValidationError);
    CHECK_THROWS_AS(empirical_autocorrelation(ModelSpec::alternating(), 4, -1), ValidationError);
    CHECK_THROWS_AS(autocorrelation_of_window(generate_window(ModelSpec::alternating(), -5, 5), 5, 1),
                    ValidationError);

    const auto saved = max_window_length();
    set_max_window_length(1000);
    CHECK_THROWS_AS(empirical_autocorrelation(ModelSpec::rudin_shapiro(), 499, 1), ResourceError);
    set_max_window_length(saved);
}

TEST_CASE("windowed pair sums")
{
    const std::vector<double> w{1.0, -1.0, 2.0};
    const auto c = windowed_pair_sums(w);
    REQUIRE(c.size() == 5);
    CHECK(c[2] == 6.0);   // 1 + 1 + 4
    CHECK(c[3] == -3.0);  // 1*-1 + -1*2
    CHECK(c[4] == 2.0);   // 1*2
    CHECK(c[1] == c[3]);
    CHECK(c[0] == c[4]);
}

TEST_CASE("verify_rs_recursions: base cases and the exhaustive check")
{
    const auto report = verify_rs_recursions(1024);
    CHECK(report.passed());
    CHECK(report.max_index == 1024);
    CHECK(report.checked == 2 * (2 * 1024 + 1));

    // t = 0: a_0 = (1 + 1)/2 a_0; t = 2: a_2 = 0
    const auto tiny = verify_rs_recursions(2);
    CHECK(tiny.passed());
    CHECK_THROWS_AS(verify_rs_recursions(0), ValidationError);
}

TEST_CASE("check_rs_recursions reports a wrong candidate")
{
    // a_1 = 1/2 breaks the a_{4m+1} branch at t = 1 and every branch that reads a_1
    const auto report = check_rs_recursions(16, [](std::int64_t t) {
        Exact a(t == 0 ? 1 : 0);
        if (t == 1) {
            a = Exact(1, 2);
        }
        return RSCorrelationPair{t, a, Exact(0)};
    });
    CHECK_FALSE(report.passed());
    bool saw_t1 = false;
    bool saw_t3 = false;
    for (const auto& v : report.violations) {
        saw_t1 = saw_t1 || (v.index == 1 && v.branch == "a_{4m+1}");
        saw_t3 = saw_t3 || (v.index == 3 && v.branch == "a_{4m+3}");
    }
    CHECK(saw_t1);
    CHECK(saw_t3);

    // b_0 = 1 violates b_{4m} = 0 at t = 0
    const auto b0 = check_rs_recursions(4, [](std::int64_t t) {
        return RSCorrelationPair{t, Exact(t == 0 ? 1 : 0), Exact(t == 0 ? 1 : 0)};
    });
    CHECK_FALSE(b0.passed());
    bool saw_b0 = false;
    for (const auto& v : b0.violations) {
        saw_b0 = saw_b0 || (v.index == 0 && v.branch == "b_{4m}");
    }
    CHECK(saw_b0);
}

TEST_CASE("forward solution of the recursions is forced to a = delta, b = 0")
{
    const auto solved = solve_rs_recursions(512);
    REQUIRE(solved.size() == 2 * 512 + 1);
    for (const auto& s : solved) {
        REQUIRE(s.a == Exact(s.index == 0 ? 1 : 0));
        REQUIRE(s.b == Exact(0));
    }
}

TEST_CASE("finite-window a_t and b_t of the generated chain approach the exact solution")
{
    constexpr std::int64_t N = 1 << 15;
    constexpr std::int64_t T = 40;
    const auto w = generate_window(ModelSpec::rudin_shapiro(), -N - 4 * T - 8, N + 4 * T + 8);
    auto est = [&](std::int64_t t) {
        double a = 0.0;
        double b = 0.0;
        for (std::int64_t n = -N; n <= N; ++n) {
            const double p = w.at(n) * w.at(n + t);
            a += p;
            b += (n % 2 == 0) ? p : -p;
        }
        const double norm = static_cast<double>(2 * N + 1);
        return std::pair{a / norm, b / norm};
    };
    for (std::int64_t t = -T; t <= T; ++t) {
        const auto [at, bt] = est(t);
        CHECK(std::abs(at - (t == 0 ? 1.0 : 0.0)) <= 0.02);
        CHECK(std::abs(bt) <= 0.02);
    }
}

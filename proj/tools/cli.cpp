#include "cli.hpp"

#include "dirac/io.hpp"
#include "dirac/limits.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

namespace dirac::cli {

using nlohmann::json;

namespace {

struct Options {
    std::string model;
    std::string model_a;
    std::string model_b;
    std::string out;
    std::string format = "csv";
    std::string seeds;
    std::string k0 = "0";
    std::string mode = "autocorr";
    std::int64_t first = 0;
    std::int64_t last = 0;
    std::int64_t N = 0;
    std::vector<std::int64_t> N_list;
    std::int64_t M = 0;
    std::int64_t G = 4096;
    std::int64_t bins = 16;
    std::int64_t k = 8;
    std::int64_t L_max = 16;
    std::int64_t max_index = 1024;
    double tol = 0.05;
    bool analytic = false;
    bool diffraction = false;
};

// Result of one command: the data file body plus manifest extras.
struct Rendered {
    std::string body;
    json meta = json::object();
};

std::string read_model_text(const std::string& value, const std::string& flag)
{
    if (value.empty()) {
        throw ValidationError(flag + ": model is required");
    }
    const auto first = value.find_first_not_of(" \t\n");
    if (first != std::string::npos && value[first] == '{') {
        return value;
    }
    std::ifstream in(value);
    if (!in) {
        throw ValidationError(flag + ": not inline JSON and no readable file \"" + value + "\"");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ModelSpec load_model(const std::string& value, const std::string& flag)
{
    try {
        return io::parse_model(read_model_text(value, flag));
    } catch (const ValidationError& e) {
        throw ValidationError(flag + ": " + e.what());
    }
}

std::vector<Seed> parse_seeds(const std::string& text)
{
    if (text.empty()) {
        return default_seeds();
    }
    auto parse_one = [&](const std::string& s) -> Seed {
        try {
            std::size_t used = 0;
            const auto v = std::stoull(s, &used);
            if (used != s.size() || s.front() == '-') {
                throw std::invalid_argument(s);
            }
            return v;
        } catch (const std::exception&) {
            throw ValidationError("--seeds: cannot parse \"" + s + "\" (use 1-50 or 1,2,3)");
        }
    };
    std::vector<Seed> seeds;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto dash = item.find('-', 1);
        if (dash == std::string::npos) {
            seeds.push_back(parse_one(item));
            continue;
        }
        const auto lo = parse_one(item.substr(0, dash));
        const auto hi = parse_one(item.substr(dash + 1));
        if (lo > hi) {
            throw ValidationError("--seeds: empty range \"" + item + "\"");
        }
        for (auto s = lo; s <= hi; ++s) {
            seeds.push_back(s);
        }
    }
    if (seeds.empty()) {
        throw ValidationError("--seeds: no seeds given");
    }
    return seeds;
}

json seeds_json(const std::vector<Seed>& seeds) { return json(seeds); }

bool want_json(const Options& o) { return o.format == "json"; }

template <class T>
std::string csv_of(const T& value)
{
    std::ostringstream os;
    io::write_csv(os, value);
    return os.str();
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json rows_json(const Autocorrelation& acf)
{
    json rows = json::array();
    for (std::int64_t m = -acf.max_lag; m <= acf.max_lag; ++m) {
        rows.push_back({{"m", m}, {"eta", io::round12(acf.at(m))}});
    }
    return {{"max_lag", acf.max_lag},
            {"window_half_size", acf.window_half_size ? json(*acf.window_half_size) : json("analytic")},
            {"rows", rows}};
}

Rendered cmd_generate(const Options& o)
{
    const auto spec = load_model(o.model, "--model");
    const auto window = generate_window(spec, o.first, o.last);
    Rendered r;
    r.meta["model"] = io::to_json(spec);
    if (want_json(o)) {
        json rows = json::array();
        for (std::size_t i = 0; i < window.size(); ++i) {
            rows.push_back({{"n", window.offset + static_cast<std::int64_t>(i)}, {"w", io::round12(window.weights[i])}});
        }
        r.body = dump({{"offset", window.offset}, {"rows", rows}});
    } else {
        r.body = csv_of(window);
    }
    return r;
}

Rendered cmd_autocorr(const Options& o)
{
    const auto spec = load_model(o.model, "--model");
    const auto acf = o.analytic ? analytic_autocorrelation(spec, o.M) : empirical_autocorrelation(spec, o.N, o.M);
    Rendered r;
    r.meta["model"] = io::to_json(spec);
    r.body = want_json(o) ? dump(rows_json(acf)) : csv_of(acf);
    return r;
}

Rendered cmd_diffract(const Options& o)
{
    const auto spec = load_model(o.model, "--model");
    Rendered r;
    r.meta["model"] = io::to_json(spec);
    if (o.analytic) {
        r.body = dump(io::to_json(analytic_diffraction(spec)));
        return r;
    }
    Periodogram pg;
    if (!o.seeds.empty() && spec.is_stochastic()) {
        const auto seeds = parse_seeds(o.seeds);
        r.meta["seeds"] = seeds_json(seeds);
        pg = ensemble_periodogram(spec, o.N, o.G, seeds);
    } else {
        pg = periodogram(spec, o.N, o.G);
    }
    if (want_json(o)) {
        json rows = json::array();
        for (std::int64_t j = 0; j < pg.grid_size; ++j) {
            rows.push_back({{"k", io::round12(pg.k(j))},
                            {"intensity", io::round12(pg.intensities[static_cast<std::size_t>(j)])}});
        }
        r.body = dump({{"grid_size", pg.grid_size}, {"window_half_size", pg.window_half_size}, {"rows", rows}});
    } else {
        r.body = csv_of(pg);
    }
    return r;
}

Rendered cmd_bragg(const Options& o)
{
    const auto spec = load_model(o.model, "--model");
    const auto k0 = io::parse_rational(o.k0);
    std::vector<Seed> seeds;
    Rendered r;
    r.meta["model"] = io::to_json(spec);
    if (spec.is_stochastic()) {
        seeds = parse_seeds(o.seeds);
        r.meta["seeds"] = seeds_json(seeds);
    }
    if (o.N_list.empty()) {
        throw ValidationError("--N: at least one window half-size is required");
    }
    r.body = dump(io::to_json(bragg_weight(spec, k0, o.N_list, o.G, seeds)));
    return r;
}

Rendered cmd_spectrum(const Options& o)
{
    const auto spec = load_model(o.model, "--model");
    Rendered r;
    r.meta["model"] = io::to_json(spec);
    std::vector<Seed> seeds;
    if (spec.is_stochastic()) {
        seeds = parse_seeds(o.seeds);
        r.meta["seeds"] = seeds_json(seeds);
    }
    const auto masses = binned_measure(ensemble_periodogram(spec, o.N, o.G, seeds), o.bins);
    if (want_json(o)) {
        json rows = json::array();
        const auto bins = static_cast<double>(masses.size());
        for (std::size_t b = 0; b < masses.size(); ++b) {
            rows.push_back({{"bin_lo", io::round12(static_cast<double>(b) / bins)},
                            {"bin_hi", io::round12(static_cast<double>(b + 1) / bins)},
                            {"mass", io::round12(masses[b])}});
        }
        r.body = dump({{"rows", rows}});
    } else {
        std::ostringstream os;
        io::write_binned_csv(os, masses);
        r.body = os.str();
    }
    return r;
}

Rendered cmd_homometry(const Options& o)
{
    const auto a = load_model(o.model_a, "--a");
    const auto b = load_model(o.model_b, "--b");
    Rendered r;
    r.meta["model_a"] = io::to_json(a);
    r.meta["model_b"] = io::to_json(b);
    json report;
    if (o.mode == "autocorr") {
        const auto x = o.analytic ? analytic_autocorrelation(a, o.M) : empirical_autocorrelation(a, o.N, o.M);
        const auto y = o.analytic ? analytic_autocorrelation(b, o.M) : empirical_autocorrelation(b, o.N, o.M);
        report = io::to_json(compare_autocorrelations(x, y, o.tol));
    } else if (o.mode == "spectral") {
        const auto seeds = parse_seeds(o.seeds);
        r.meta["seeds"] = seeds_json(seeds);
        report = io::to_json(spectral_homometry(a, b, o.N, o.G, o.bins, o.tol, seeds));
    } else {
        throw ValidationError("--mode must be autocorr or spectral");
    }
    report["mode"] = o.mode;
    r.body = dump(report);
    return r;
}

Rendered cmd_entropy(const Options& o)
{
    const auto spec = load_model(o.model, "--model");
    Rendered r;
    r.meta["model"] = io::to_json(spec);
    r.body = dump(io::to_json(entropy_report(spec, o.N, o.k, o.L_max)));
    return r;
}

Rendered cmd_complexity(const Options& o)
{
    const auto spec = load_model(o.model, "--model");
    const auto counts = patch_complexity(spec, o.N, o.L_max);
    Rendered r;
    r.meta["model"] = io::to_json(spec);
    json saturation = json::array();
    for (const auto& c : counts) {
        saturation.push_back(c.saturated);
    }
    r.meta["saturated"] = saturation;
    if (want_json(o)) {
        json rows = json::array();
        for (const auto& c : counts) {
            rows.push_back({{"L", c.length}, {"count", c.count}, {"saturated", c.saturated}});
        }
        r.body = dump({{"rows", rows}});
    } else {
        r.body = csv_of(counts);
    }
    return r;
}

Rendered cmd_product(const Options& o)
{
    const auto a = load_model(o.model_a, "--a");
    const auto b = load_model(o.model_b, "--b");
    Rendered r;
    r.meta["model_a"] = io::to_json(a);
    r.meta["model_b"] = io::to_json(b);
    if (o.diffraction) {
        r.body = dump(io::to_json(product_diffraction(analytic_diffraction(a), analytic_diffraction(b))));
        return r;
    }
    const auto acf = o.analytic
                         ? product_autocorrelation(analytic_autocorrelation(a, o.M), analytic_autocorrelation(b, o.M))
                         : product_autocorrelation(empirical_autocorrelation(a, o.N, o.M),
                                                   empirical_autocorrelation(b, o.N, o.M));
    if (want_json(o)) {
        json rows = json::array();
        for (std::int64_t m1 = -acf.max_lag; m1 <= acf.max_lag; ++m1) {
            for (std::int64_t m2 = -acf.max_lag; m2 <= acf.max_lag; ++m2) {
                rows.push_back({{"m1", m1}, {"m2", m2}, {"eta", io::round12(acf.at(m1, m2))}});
            }
        }
        r.body = dump({{"max_lag", acf.max_lag}, {"rows", rows}});
    } else {
        r.body = csv_of(acf);
    }
    return r;
}

Rendered cmd_verify_rs(const Options& o)
{
    const auto report = verify_rs_recursions(o.max_index);
    const auto solved = solve_rs_recursions(o.max_index);
    bool forced = true;
    for (const auto& s : solved) {
        forced = forced && s.a == Exact(s.index == 0 ? 1 : 0) && s.b == Exact(0);
    }
    auto j = io::to_json(report);
    j["forward_solution_matches"] = forced;
    return {dump(j), json::object()};
}

json config_json(const CLI::App& sub)
{
    json cfg = json::object();
    for (const auto* opt : sub.get_options()) {
        if (opt->count() == 0 || opt->get_name() == "--help") {
            continue;
        }
        auto name = opt->get_name();
        while (!name.empty() && name.front() == '-') {
            name.erase(name.begin());
        }
        const auto& results = opt->results();
        if (results.empty()) {
            cfg[name] = true;
        } else if (results.size() == 1) {
            cfg[name] = results.front();
        } else {
            cfg[name] = results;
        }
    }
    return cfg;
}

void write_file(const std::string& path, const std::string& body)
{
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) {
        throw std::runtime_error("cannot open output file " + path);
    }
    f << body;
    if (!f) {
        throw std::runtime_error("failed writing " + path);
    }
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Finite-size diffraction of binary Dirac combs on the integers", "dirac"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    Options o;
    using Handler = Rendered (*)(const Options&);
    std::vector<std::pair<CLI::App*, Handler>> commands;

    auto add_model = [&](CLI::App* s) {
        s->add_option("--model", o.model, "model JSON, inline or a file path")->required();
    };
    auto add_pair = [&](CLI::App* s) {
        s->add_option("--a", o.model_a, "first model JSON")->required();
        s->add_option("--b", o.model_b, "second model JSON")->required();
    };
    auto add_common = [&](CLI::App* s) {
        s->add_option("--out", o.out, "output file; a <out>.manifest.json run manifest is written beside it");
        s->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    };
    auto add_N = [&](CLI::App* s, bool required) {
        auto* opt = s->add_option("--N", o.N, "window half-size, window is [-N, N]")->check(CLI::PositiveNumber);
        if (required) {
            opt->required();
        }
    };
    auto add_seeds = [&](CLI::App* s) {
        s->add_option("--seeds", o.seeds, "ensemble seeds, e.g. 1-50 or 3,5,8 (default 1-50)");
    };

    auto* generate = app.add_subcommand("generate", "weights of a model on [first, last]");
    add_model(generate);
    generate->add_option("--first", o.first)->required();
    generate->add_option("--last", o.last)->required();
    commands.emplace_back(generate, cmd_generate);

    auto* autocorr = app.add_subcommand("autocorr", "autocorrelation coefficients eta(m), |m| <= M");
    add_model(autocorr);
    add_N(autocorr, false);
    autocorr->add_option("--M", o.M, "max lag")->check(CLI::NonNegativeNumber)->required();
    autocorr->add_flag("--analytic", o.analytic, "closed-form coefficients instead of an estimate");
    commands.emplace_back(autocorr, cmd_autocorr);

    auto* diffract = app.add_subcommand("diffract", "periodogram I_N(j/G), or the closed-form measure");
    add_model(diffract);
    add_N(diffract, false);
    diffract->add_option("--G", o.G, "grid size")->check(CLI::PositiveNumber);
    diffract->add_flag("--analytic", o.analytic, "print the closed-form spectral measure as JSON");
    add_seeds(diffract);
    commands.emplace_back(diffract, cmd_diffract);

    auto* bragg = app.add_subcommand("bragg", "Bragg weight at rational k0 for a sequence of N");
    add_model(bragg);
    bragg->add_option("--N", o.N_list, "window half-sizes, increasing")->delimiter(',')->required();
    bragg->add_option("--k", o.k0, "position k0 as a/b in [0, 1)");
    bragg->add_option("--G", o.G, "grid size, must be a multiple of the denominator of k0")
        ->check(CLI::PositiveNumber);
    add_seeds(bragg);
    commands.emplace_back(bragg, cmd_bragg);

    auto* spectrum = app.add_subcommand("spectrum", "binned diffraction measure, ensemble mean for stochastic models");
    add_model(spectrum);
    add_N(spectrum, true);
    spectrum->add_option("--G", o.G, "grid size")->check(CLI::PositiveNumber);
    spectrum->add_option("--bins", o.bins, "number of bins, must divide G")->check(CLI::PositiveNumber);
    add_seeds(spectrum);
    commands.emplace_back(spectrum, cmd_spectrum);

    auto* homometry = app.add_subcommand("homometry", "compare two models by autocorrelation or binned diffraction");
    add_pair(homometry);
    add_N(homometry, false);
    homometry->add_option("--M", o.M, "max lag (autocorr mode)")->check(CLI::NonNegativeNumber);
    homometry->add_option("--G", o.G, "grid size (spectral mode)")->check(CLI::PositiveNumber);
    homometry->add_option("--bins", o.bins, "bins (spectral mode)")->check(CLI::PositiveNumber);
    homometry->add_option("--tol", o.tol, "tolerance")->check(CLI::PositiveNumber);
    homometry->add_option("--mode", o.mode, "autocorr or spectral")->check(CLI::IsMember({"autocorr", "spectral"}));
    homometry->add_flag("--analytic", o.analytic, "compare closed-form autocorrelations");
    add_seeds(homometry);
    commands.emplace_back(homometry, cmd_homometry);

    auto* entropy = app.add_subcommand("entropy", "exact and block entropy, patch counts");
    add_model(entropy);
    add_N(entropy, true);
    entropy->add_option("--k", o.k, "block length")->check(CLI::PositiveNumber);
    entropy->add_option("--L-max", o.L_max, "longest patch length")->check(CLI::PositiveNumber);
    commands.emplace_back(entropy, cmd_entropy);

    auto* complexity = app.add_subcommand("complexity", "patch counting complexity p(L)");
    add_model(complexity);
    add_N(complexity, true);
    complexity->add_option("--L-max", o.L_max, "longest patch length")->check(CLI::PositiveNumber);
    commands.emplace_back(complexity, cmd_complexity);

    auto* product = app.add_subcommand("product", "2D product comb autocorrelation or diffraction");
    add_pair(product);
    add_N(product, false);
    product->add_option("--M", o.M, "max lag")->check(CLI::NonNegativeNumber);
    product->add_flag("--analytic", o.analytic, "closed-form factor autocorrelations");
    product->add_flag("--diffraction", o.diffraction, "print the closed-form 2D spectral measure as JSON");
    commands.emplace_back(product, cmd_product);

    auto* verify = app.add_subcommand("verify-rs", "exact check of the Rudin-Shapiro correlation recursions");
    verify->add_option("--max", o.max_index, "largest |t| checked")->check(CLI::PositiveNumber);
    commands.emplace_back(verify, cmd_verify_rs);

    for (auto& [sub, handler] : commands) {
        add_common(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    CLI::App* active = nullptr;
    Handler handler = nullptr;
    for (auto& [sub, h] : commands) {
        if (sub->parsed()) {
            active = sub;
            handler = h;
        }
    }

    const auto started = std::chrono::steady_clock::now();
    try {
        const bool estimates = !o.analytic && !o.diffraction
                               && (active == autocorr || active == diffract || active == product
                                   || active == homometry);
        const bool spectral = active == homometry && o.mode == "spectral";
        const bool needs_N = estimates || spectral;
        if (needs_N && o.N < 1) {
            throw ValidationError("--N is required for this command");
        }
        Rendered rendered = handler(o);
        const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

        if (o.out.empty()) {
            out << rendered.body;
            return 0;
        }
        json manifest{{"tool", "dirac"},
                      {"version", kVersion},
                      {"command", active->get_name()},
                      {"config", config_json(*active)},
                      {"data_file", o.out},
                      {"format", o.format},
                      {"max_window_length", max_window_length()},
                      {"elapsed_seconds", elapsed}};
        for (auto& [key, value] : rendered.meta.items()) {
            manifest[key] = value;
        }
        write_file(o.out, rendered.body);
        write_file(o.out + ".manifest.json", manifest.dump(2) + "\n");
        return 0;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const UnsupportedModel& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const ResourceError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return 1;
    }
}

int run(int argc, char** argv)
{
    return run(argc, argv, std::cout, std::cerr);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    std::vector<const char*> argv{"dirac"};
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace dirac::cli

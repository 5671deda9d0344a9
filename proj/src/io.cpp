#include "dirac/io.hpp"

#include "dirac/limits.hpp"

#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <set>

namespace dirac::io {

using nlohmann::json;

namespace {

std::string rational_text(const Exact& x)
{
    if (x.denominator() == 1) {
        return std::to_string(x.numerator());
    }
    return std::to_string(x.numerator()) + "/" + std::to_string(x.denominator());
}

double to_double(const Exact& x) { return boost::rational_cast<double>(x); }

void require_keys(const json& j, const std::set<std::string>& allowed, const std::string& model)
{
    for (const auto& [key, value] : j.items()) {
        if (!allowed.contains(key)) {
            throw ValidationError("model \"" + model + "\" does not take key \"" + key + "\"");
        }
    }
}

double number_field(const json& j, const char* key, const std::string& model)
{
    if (!j.contains(key)) {
        throw ValidationError("model \"" + model + "\" requires \"" + key + "\"");
    }
    if (!j.at(key).is_number()) {
        throw ValidationError("\"" + std::string(key) + "\" must be a number");
    }
    return j.at(key).get<double>();
}

Seed seed_field(const json& j)
{
    if (!j.contains("seed")) {
        return kDefaultSeed;
    }
    const auto& s = j.at("seed");
    if (!s.is_number_integer() || (s.is_number_integer() && !s.is_number_unsigned() && s.get<std::int64_t>() < 0)) {
        throw ValidationError("\"seed\" must be a nonnegative integer");
    }
    return s.get<Seed>();
}

json seed_json(Seed s) { return json(s); }

} // namespace

std::string format_number(double x)
{
    if (x == 0.0) {
        return "0";
    }
    return fmt::format("{:.12g}", x);
}

double round12(double x)
{
    if (!std::isfinite(x)) {
        return x;
    }
    return std::stod(fmt::format("{:.12g}", x));
}

ModelSpec model_from_json(const json& j)
{
    if (!j.is_object()) {
        throw ValidationError("model must be a JSON object");
    }
    if (!j.contains("model") || !j.at("model").is_string()) {
        throw ValidationError("model JSON requires a string \"model\" tag");
    }
    const auto tag = j.at("model").get<std::string>();
    if (tag == "constant") {
        require_keys(j, {"model", "w"}, tag);
        return ModelSpec::constant(j.contains("w") ? number_field(j, "w", tag) : 1.0);
    }
    if (tag == "periodic") {
        require_keys(j, {"model", "pattern"}, tag);
        if (!j.contains("pattern") || !j.at("pattern").is_array()) {
            throw ValidationError("model \"periodic\" requires a \"pattern\" array");
        }
        std::vector<double> pattern;
        for (const auto& v : j.at("pattern")) {
            if (!v.is_number()) {
                throw ValidationError("\"pattern\" entries must be numbers");
            }
            pattern.push_back(v.get<double>());
        }
        return ModelSpec::periodic(std::move(pattern));
    }
    if (tag == "alternating") {
        require_keys(j, {"model"}, tag);
        return ModelSpec::alternating();
    }
    if (tag == "rudin_shapiro") {
        require_keys(j, {"model"}, tag);
        return ModelSpec::rudin_shapiro();
    }
    if (tag == "bernoulli") {
        require_keys(j, {"model", "p", "seed"}, tag);
        return ModelSpec::bernoulli(number_field(j, "p", tag), seed_field(j));
    }
    if (tag == "bernoullised") {
        require_keys(j, {"model", "p", "seed", "base"}, tag);
        if (!j.contains("base")) {
            throw ValidationError("model \"bernoullised\" requires \"base\"");
        }
        return ModelSpec::bernoullised(model_from_json(j.at("base")), number_field(j, "p", tag), seed_field(j));
    }
    throw ValidationError("unknown model \"" + tag + "\"");
}

ModelSpec parse_model(std::string_view text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("malformed model JSON: ") + e.what());
    }
    return model_from_json(j);
}

json to_json(const ModelSpec& spec)
{
    json j{{"model", spec.name()}};
    const auto& v = spec.variant();
    if (const auto* c = std::get_if<model::Constant>(&v)) {
        j["w"] = c->w;
    } else if (const auto* c = std::get_if<model::Periodic>(&v)) {
        j["pattern"] = c->pattern;
    } else if (const auto* b = std::get_if<model::Bernoulli>(&v)) {
        j["p"] = b->p;
        j["seed"] = seed_json(b->seed);
    } else if (const auto* b = std::get_if<model::Bernoullised>(&v)) {
        j["base"] = to_json(*b->base);
        j["p"] = b->p;
        j["seed"] = seed_json(b->seed);
    }
    return j;
}

Exact parse_rational(std::string_view text)
{
    auto parse_int = [&](std::string_view s) {
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
            throw ValidationError("expected a rational like 1/2, got \"" + std::string(text) + "\"");
        }
        return v;
    };
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Exact(parse_int(text));
    }
    const auto den = parse_int(text.substr(slash + 1));
    if (den == 0) {
        throw ValidationError("rational with zero denominator: \"" + std::string(text) + "\"");
    }
    return Exact(parse_int(text.substr(0, slash)), den);
}

void write_csv(std::ostream& os, const WeightWindow& window)
{
    os << "n,w\n";
    for (std::size_t i = 0; i < window.size(); ++i) {
        os << window.offset + static_cast<std::int64_t>(i) << ',' << format_number(window.weights[i]) << '\n';
    }
}

void write_csv(std::ostream& os, const Autocorrelation& acf)
{
    os << "m,eta\n";
    for (std::int64_t m = -acf.max_lag; m <= acf.max_lag; ++m) {
        os << m << ',' << format_number(acf.at(m)) << '\n';
    }
}

void write_csv(std::ostream& os, const Periodogram& pg)
{
    os << "k,intensity\n";
    for (std::int64_t j = 0; j < pg.grid_size; ++j) {
        os << format_number(pg.k(j)) << ',' << format_number(pg.intensities[static_cast<std::size_t>(j)]) << '\n';
    }
}

void write_csv(std::ostream& os, const Autocorrelation2D& acf)
{
    os << "m1,m2,eta\n";
    for (std::int64_t m1 = -acf.max_lag; m1 <= acf.max_lag; ++m1) {
        for (std::int64_t m2 = -acf.max_lag; m2 <= acf.max_lag; ++m2) {
            os << m1 << ',' << m2 << ',' << format_number(acf.at(m1, m2)) << '\n';
        }
    }
}

void write_csv(std::ostream& os, const std::vector<PatchCount>& counts)
{
    os << "L,count\n";
    for (const auto& c : counts) {
        os << c.length << ',' << c.count << '\n';
    }
}

void write_binned_csv(std::ostream& os, const std::vector<double>& masses)
{
    os << "bin_lo,bin_hi,mass\n";
    const auto bins = static_cast<double>(masses.size());
    for (std::size_t b = 0; b < masses.size(); ++b) {
        os << format_number(static_cast<double>(b) / bins) << ',' << format_number(static_cast<double>(b + 1) / bins)
           << ',' << format_number(masses[b]) << '\n';
    }
}

json to_json(const SpectralMeasure& measure)
{
    json bragg = json::array();
    for (const auto& p : measure.bragg) {
        bragg.push_back({round12(to_double(p.position)), round12(p.weight)});
    }
    return {{"bragg", bragg},
            {"ac_level", round12(measure.ac_level)},
            {"sc", std::string(SpectralMeasure::singular_continuous)}};
}

json to_json(const SpectralMeasure2D& measure)
{
    json bragg = json::array();
    for (const auto& p : measure.bragg) {
        bragg.push_back({round12(to_double(p.k1)), round12(to_double(p.k2)), round12(p.weight)});
    }
    auto lines = [](const std::vector<SpectralLine>& ls) {
        json out = json::array();
        for (const auto& l : ls) {
            out.push_back({round12(to_double(l.position)), round12(l.density)});
        }
        return out;
    };
    return {{"bragg", bragg},
            {"bragg_x_ac", lines(measure.lines_k1)},
            {"ac_x_bragg", lines(measure.lines_k2)},
            {"ac_level", round12(measure.ac_level)},
            {"sc", std::string(SpectralMeasure::singular_continuous)}};
}

json to_json(const RecursionReport& report)
{
    json violations = json::array();
    for (const auto& v : report.violations) {
        violations.push_back(
            {{"branch", v.branch}, {"index", v.index}, {"lhs", rational_text(v.lhs)}, {"rhs", rational_text(v.rhs)}});
    }
    return {{"max_index", report.max_index}, {"checked", report.checked}, {"violations", violations}};
}

json to_json(const HomometryReport& report)
{
    return {{"distance", round12(report.distance)},
            {"tolerance", round12(report.tolerance)},
            {"worst_lag", report.worst_lag},
            {"pass", report.pass}};
}

json to_json(const SpectralHomometryReport& report)
{
    json a = json::array();
    json b = json::array();
    for (std::size_t i = 0; i < report.masses_a.size(); ++i) {
        a.push_back(round12(report.masses_a[i]));
        b.push_back(round12(report.masses_b[i]));
    }
    return {{"max_discrepancy", round12(report.max_discrepancy)},
            {"worst_bin", report.worst_bin},
            {"tolerance", round12(report.tolerance)},
            {"pass", report.pass},
            {"masses_a", a},
            {"masses_b", b}};
}

json to_json(const BraggEstimate& estimate)
{
    json rows = json::array();
    for (std::size_t i = 0; i < estimate.half_sizes.size(); ++i) {
        rows.push_back({{"N", estimate.half_sizes[i]},
                        {"intensity", round12(estimate.intensities[i])},
                        {"weight", round12(estimate.weights[i])}});
    }
    json exponent = std::isfinite(estimate.growth_exponent) ? json(round12(estimate.growth_exponent)) : json(nullptr);
    return {{"k0", rational_text(estimate.k0)},
            {"grid_size", estimate.grid_size},
            {"estimates", rows},
            {"limit", round12(estimate.limit)},
            {"growth_exponent", exponent},
            {"classification", estimate.classification}};
}

json to_json(const EntropyReport& report)
{
    json counts = json::array();
    for (const auto& c : report.patch_counts) {
        counts.push_back({{"L", c.length}, {"count", c.count}, {"saturated", c.saturated}});
    }
    return {{"model", to_json(report.model)},
            {"exact_H", report.exact_H ? json(round12(*report.exact_H)) : json(nullptr)},
            {"block_k", report.block_k},
            {"block_H_per_symbol", round12(report.block_H_per_symbol)},
            {"patch_counts", counts}};
}

} // namespace dirac::io

#pragma once

#include "dirac/combs.hpp"
#include "dirac/correlation.hpp"
#include "dirac/order.hpp"
#include "dirac/products.hpp"
#include "dirac/spectra.hpp"

#include <json.hpp>

#include <ostream>
#include <string>
#include <string_view>

namespace dirac::io {

inline constexpr Seed kDefaultSeed = 1;

/// Decimal text with 12 significant digits, the precision of every data file.
std::string format_number(double x);

/// x rounded to 12 significant digits, for JSON values.
double round12(double x);

/// Model JSON: {"model": "rudin_shapiro" | "bernoulli" | "bernoullised" |
/// "constant" | "periodic" | "alternating", "p", "seed", "w", "pattern", "base"}.
/// Unknown keys and missing required keys throw ValidationError.
ModelSpec model_from_json(const nlohmann::json& j);
ModelSpec parse_model(std::string_view text);
nlohmann::json to_json(const ModelSpec& spec);

/// Parses "a/b" or a plain integer. Decimals are rejected so grid
/// positions stay exact.
Exact parse_rational(std::string_view text);

void write_csv(std::ostream& os, const WeightWindow& window);             // n,w
void write_csv(std::ostream& os, const Autocorrelation& acf);             // m,eta
void write_csv(std::ostream& os, const Periodogram& pg);                  // k,intensity
void write_csv(std::ostream& os, const Autocorrelation2D& acf);           // m1,m2,eta
void write_csv(std::ostream& os, const std::vector<PatchCount>& counts);  // L,count
void write_binned_csv(std::ostream& os, const std::vector<double>& masses);  // bin_lo,bin_hi,mass

nlohmann::json to_json(const SpectralMeasure& measure);
nlohmann::json to_json(const SpectralMeasure2D& measure);
nlohmann::json to_json(const RecursionReport& report);
nlohmann::json to_json(const HomometryReport& report);
nlohmann::json to_json(const SpectralHomometryReport& report);
nlohmann::json to_json(const BraggEstimate& estimate);
nlohmann::json to_json(const EntropyReport& report);

} // namespace dirac::io

#ifndef JACOBI_IO_HPP
#define JACOBI_IO_HPP

#include "jacobi/validate.hpp"

#include <json.hpp>

#include <map>
#include <string>

namespace jacobi {

using Json = nlohmann::ordered_json;

struct Tolerances {
    double resid = 1e-10; // recurrence / identity residuals
    double quad = 1e-8;   // contour-quadrature accuracy target
    double edge = 1e-12;  // band-edge bisection
    double root = 1e-12;  // eigenvalue bisection
    double prop = 1e-6;   // algebraic property checks
    double tail = 1e-10;  // kernel tail decay
};

/// Parsed job configuration.  Unknown keys anywhere in the file are an error.
struct JobConfig {
    Background bg_minus = ConstantBackground{};
    Background bg_plus = ConstantBackground{};
    std::map<int, double> a_dev; // per-site overrides
    std::map<int, double> b_dev;
    int grid_per_band = 512;
    int moment_q = 2;
    long truncation = 40; // Marchenko kernel half-width
    Tolerances tol;

    Coefficients make_coefficients() const;
};

JobConfig parse_config(const Json& j);
JobConfig load_config(const std::string& path);

Json background_to_json(const Background& bg);
Background background_from_json(const Json& j);

/// Scattering-data files hold upper-rim samples only; the lower rim is
/// reconstructed by conjugation on load.
Json scattering_to_json(const ScatteringData& sd);
ScatteringData scattering_from_json(const Json& j);
void save_scattering(const ScatteringData& sd, const std::string& path);
ScatteringData load_scattering(const std::string& path);

Json report_to_json(const std::vector<PropertyReport>& reports);

/// %.17g - lossless, locale-independent float formatting for CSV tables.
std::string format_double(double x);

/// RFC-4180-style CSV; every cell preformatted by the caller.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

void write_text(const std::string& path, const std::string& content);

} // namespace jacobi

#endif

// config.hpp: JSON run configuration for the fgr command-line tool
//
// {
//   "schema_version": 1,
//   "unit": "omega0" | "rad_per_s",
//   "model": {"type": "broadband", "lambda": 0.01, "eta": 2, "omega_x": 250,
//             "cutoff": {"kind": "exponential"} | {"kind": "power_lorentz", "mu": 4}}
//          | {"type": "narrowband", "g": 0.01, "kappa": 0.05, "omega_c": 1},
//   "emitter": {"omega0": 1},
//   "time_grid": {"t_min": 0.01, "t_max": 100, "points_per_decade": 64},
//   "quadrature": {"rel_tol": 1e-8, "abs_tol": 0, "max_panels": 200000,
//                  "nodes_per_panel": 16, "tail_epsilon": 1e-12},      (optional)
//   "onset_epsilon": 1.0,                                               (optional)
//   "output": {"path": "curve.csv", "format": "csv" | "json"}           (optional)
// }
//
// A narrowband model may give "quality" (Q = ω_c/2κ) instead of "kappa".
// Unknown keys are rejected so that typos do not silently fall back to defaults.

#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "fgr/quadrature.hpp"
#include "fgr/reservoir.hpp"

namespace fgr::cli {

inline constexpr int kSchemaVersion = 1;

// Message is prefixed with the offending field path ("model.eta: ...") or the
// line/column of a JSON syntax error.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class Unit { Omega0, RadPerS };
enum class OutputFormat { Csv, Json };

struct TimeGrid {
    double t_min{1e-2};
    double t_max{1e2};
    double points_per_decade{64.0};
    friend bool operator==(const TimeGrid&, const TimeGrid&) = default;
};

struct OutputSpec {
    std::string path;  // empty: standard output
    OutputFormat format{OutputFormat::Csv};
    friend bool operator==(const OutputSpec&, const OutputSpec&) = default;
};

struct RunConfig {
    int schema_version{kSchemaVersion};
    Unit unit{Unit::Omega0};
    Reservoir model;
    EmitterSpec emitter;
    TimeGrid time_grid;
    QuadratureConfig quadrature;
    std::optional<double> onset_epsilon;
    OutputSpec output;
    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);
std::string serialize_config(const RunConfig& config);

}  // namespace fgr::cli

// commands.hpp: subcommands of the fgr tool, callable without a process

#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "fgr/config.hpp"
#include "fgr/rate_curve.hpp"
#include "fgr/reservoir.hpp"

namespace fgr::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 1,
    kExitPartialConvergence = 2,
    kExitOnsetNotFound = 3,
    kExitVerifyFailure = 4,
};

// Fixed, documented column order of every curve CSV.
inline constexpr std::string_view kCsvHeader = "t,t_dimensionless,gamma_ratio,abs_err_est,regime,flagged";

// Shortest representation that parses back to the same double.
std::string format_double(double x);

// Header + one row per point; `extra` columns (name, per-point values) are appended.
struct ExtraColumn {
    std::string name;
    std::vector<double> values;
};
void write_curve_csv(std::ostream& out, const RateCurve& curve, const std::vector<ExtraColumn>& extra = {});
void write_curve_json(std::ostream& out, const RateCurve& curve);

std::vector<double> config_times(const RunConfig& config);

// Each command writes its primary output to `out` (or the configured file)
// and diagnostics to `err`, and returns an ExitCode.
int cmd_rate(const RunConfig& config, unsigned threads, std::ostream& out, std::ostream& err);
int cmd_onset(const RunConfig& config, std::optional<double> epsilon, unsigned threads, std::ostream& out,
              std::ostream& err);
int cmd_figure(std::string_view figure_id, const std::filesystem::path& directory, unsigned threads,
               std::ostream& out, std::ostream& err);

// One point of the fixed oracle-agreement grid shared by verify and the tests.
struct OracleCase {
    std::string name;
    Reservoir reservoir;
    EmitterSpec emitter;
    double t;
};
std::vector<OracleCase> oracle_sample_grid();

// Agreement threshold between the two quadrature schemes at a given rel_tol.
double oracle_threshold(double rel_tol);

// rel_tol defaults to 1e-10; FGR_VERIFY_REL_TOL overrides it (exit 1 if unparsable).
int cmd_verify(std::optional<double> rel_tol, std::ostream& out, std::ostream& err);

}  // namespace fgr::cli

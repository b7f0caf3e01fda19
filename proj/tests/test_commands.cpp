#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fgr/commands.hpp"

using namespace fgr;
using namespace fgr::cli;
namespace fs = std::filesystem;

namespace {

std::vector<std::string> lines_of(const std::string& text)
{
    std::vector<std::string> lines;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    return lines;
}

std::vector<std::string> split(const std::string& line)
{
    std::vector<std::string> cells;
    std::istringstream in(line);
    for (std::string cell; std::getline(in, cell, ',');) cells.push_back(cell);
    return cells;
}

RunConfig make_config(Reservoir model, TimeGrid grid)
{
    return RunConfig{kSchemaVersion, Unit::Omega0, std::move(model), EmitterSpec(1.0), grid, {}, std::nullopt, {}};
}

RunConfig narrowband_config(double t_min, double t_max, double ppd)
{
    return make_config(NarrowbandReservoir::from_quality(0.01, 10.0, 1.0), {t_min, t_max, ppd});
}

fs::path scratch(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / ("fgr_test_" + name);
    fs::remove_all(dir);
    return dir;
}

std::string slurp(const fs::path& path)
{
    std::ifstream in(path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_SUITE("commands")
{
    TEST_CASE("rate writes the fixed header and one row per grid point")
    {
        std::ostringstream out, err;
        CHECK(cmd_rate(narrowband_config(1.0, 100.0, 1.0), 1, out, err) == kExitOk);
        const auto lines = lines_of(out.str());
        REQUIRE(lines.size() == 4);
        CHECK(lines[0] == "t,t_dimensionless,gamma_ratio,abs_err_est,regime,flagged");
        double prev = 0.0;
        for (std::size_t i = 1; i < lines.size(); ++i) {
            const auto cells = split(lines[i]);
            REQUIRE(cells.size() == 6);
            const double x = std::stod(cells[1]);
            CHECK(x > prev);
            CHECK(x == doctest::Approx(std::stod(cells[0]) * 0.05));
            CHECK(cells[5] == "0");
            prev = x;
        }
        CHECK(err.str().empty());
    }

    TEST_CASE("rate output is byte-identical across runs and thread counts")
    {
        std::ostringstream a, b, err;
        const auto cfg = narrowband_config(0.1, 1000.0, 8.0);
        CHECK(cmd_rate(cfg, 1, a, err) == kExitOk);
        CHECK(cmd_rate(cfg, 4, b, err) == kExitOk);
        CHECK(a.str() == b.str());
    }

    TEST_CASE("rate json output carries metadata")
    {
        auto cfg = narrowband_config(1.0, 10.0, 1.0);
        cfg.output.format = OutputFormat::Json;
        std::ostringstream out, err;
        CHECK(cmd_rate(cfg, 1, out, err) == kExitOk);
        const auto doc = nlohmann::json::parse(out.str());
        CHECK(doc["metadata"]["dimensionless_time"] == "kappa_t");
        CHECK(doc["metadata"]["rel_tol"] == 1e-8);
        CHECK(doc["gamma_ratio"].size() == 2);
    }

    TEST_CASE("rate with a starved budget exits with partial convergence")
    {
        RunConfig cfg = make_config(BroadbandReservoir(0.01, 2.0, 250.0), {1.0, 100.0, 1.0});
        cfg.quadrature.rel_tol = 1e-14;
        cfg.quadrature.max_panels = 8;
        std::ostringstream out, err;
        CHECK(cmd_rate(cfg, 1, out, err) == kExitPartialConvergence);
        CHECK(out.str().find(",1\n") != std::string::npos);
        CHECK(err.str().find("flagged") != std::string::npos);
    }

    TEST_CASE("format_double round-trips")
    {
        for (double x : {0.1, 1.0 / 3.0, 5.714285714285714e-14, 1e300, 0.0, -2.5}) {
            CHECK(std::stod(format_double(x)) == x);
        }
        CHECK(format_double(1.0) == "1");
    }

    TEST_CASE("onset for the plasmonic narrowband mode")
    {
        const auto cfg = load_config(fs::path(FGR_SOURCE_DIR) / "configs" / "plasmonic.json");
        std::ostringstream out, err;
        CHECK(cmd_onset(cfg, std::nullopt, 0, out, err) == kExitOk);
        const auto doc = nlohmann::json::parse(out.str());
        CHECK(doc["t_f_analytic"].get<double>() == doctest::Approx(20.0 / 3.5e14).epsilon(1e-12));
        const double emp = doc["t_f_empirical"].get<double>();
        CHECK(emp / doc["t_f_analytic"].get<double>() >= 1.0);
        CHECK(emp / doc["t_f_analytic"].get<double>() <= std::pow(10.0, 1.0 / 32.0) * (1.0 + 1e-9));
        CHECK(doc["converged"] == true);
        CHECK(doc["dimensionless_time"] == "kappa_t");
    }

    TEST_CASE("onset exit codes")
    {
        const RunConfig sub = make_config(BroadbandReservoir(0.01, 0.5, 250.0), {1e-2, 1e4, 16});
        std::ostringstream out, err;
        CHECK(cmd_onset(sub, 0.1, 1, out, err) == kExitOk);
        CHECK(nlohmann::json::parse(out.str())["t_f_analytic"] == 1.0);

        const RunConfig steep = make_config(BroadbandReservoir(0.01, 3.0, 250.0), {1.0, 10.0, 2});
        std::ostringstream out3, err3;
        CHECK(cmd_onset(steep, 1.0, 1, out3, err3) == kExitOnsetNotFound);
        const auto doc = nlohmann::json::parse(out3.str());
        CHECK(doc["t_f_empirical"].is_null());
        CHECK(doc["t_f_analytic"].get<double>() == doctest::Approx(9947.0).epsilon(1e-3));

        std::ostringstream out4, err4;
        CHECK(cmd_onset(steep, -1.0, 1, out4, err4) == kExitConfig);
    }

    TEST_CASE("figure 2 writes one CSV per quality factor and markers")
    {
        const fs::path dir = scratch("fig2");
        std::ostringstream out, err;
        CHECK(cmd_figure("fig2", dir, 0, out, err) == kExitOk);
        for (const char* q : {"1", "10", "100", "1000"}) {
            const fs::path file = dir / (std::string("fig2_Q_") + q + ".csv");
            REQUIRE(fs::exists(file));
            const auto lines = lines_of(slurp(file));
            CHECK(lines.front() == std::string(kCsvHeader) + ",parameter,analytic_ratio");
            CHECK(lines.size() == 258);
        }
        const auto markers = nlohmann::json::parse(slurp(dir / "markers.json"));
        CHECK(markers["reference_ratios"][0]["value"].get<double>() == doctest::Approx(std::exp(-1.0)));
        CHECK(markers["onset_times"].size() == 4);
        fs::remove_all(dir);
    }

    TEST_CASE("figure 3 classifies the detuning sweep")
    {
        const fs::path dir = scratch("fig3");
        std::ostringstream out, err;
        CHECK(cmd_figure("fig3", dir, 0, out, err) == kExitOk);
        int csvs = 0;
        for (const auto& entry : fs::directory_iterator(dir)) csvs += entry.path().extension() == ".csv";
        CHECK(csvs == 5);
        const auto markers = nlohmann::json::parse(slurp(dir / "markers.json"));
        CHECK(markers["classification"].size() == 5);
        const auto lines = lines_of(slurp(dir / "fig3_detuning_5.csv"));
        CHECK(split(lines[1]).size() == 8);
        CHECK(split(lines[1])[6] == "5");
        fs::remove_all(dir);
    }

    TEST_CASE("figure 1 covers five exponents with onset markers")
    {
        const fs::path dir = scratch("fig1");
        std::ostringstream out, err;
        CHECK(cmd_figure("fig1", dir, 0, out, err) == kExitOk);
        for (const char* eta : {"0.5", "1", "1.5", "2", "3"})
            CHECK(fs::exists(dir / (std::string("fig1_eta_") + eta + ".csv")));
        const auto markers = nlohmann::json::parse(slurp(dir / "markers.json"));
        CHECK(markers["onset_times"].size() == 5);
        fs::remove_all(dir);
    }

    TEST_CASE("unknown figure id is a configuration error")
    {
        std::ostringstream out, err;
        CHECK(cmd_figure("fig9", scratch("fig9"), 1, out, err) == kExitConfig);
        CHECK(err.str().find("fig9") != std::string::npos);
    }

    TEST_CASE("verify reports its thresholds and passes")
    {
        std::ostringstream out, err;
        CHECK(cmd_verify(std::nullopt, out, err) == kExitOk);
        const auto lines = lines_of(out.str());
        CHECK(lines.front() == "rel_tol 1e-10, oracle threshold 1e-08");
        CHECK(lines.back() == "all checks passed");

        std::ostringstream loose, err2;
        (void)cmd_verify(1e-2, loose, err2);
        CHECK(lines_of(loose.str()).front() == "rel_tol 0.01, oracle threshold 1");

        ::setenv("FGR_VERIFY_REL_TOL", "nope", 1);
        std::ostringstream bad, err3;
        CHECK(cmd_verify(std::nullopt, bad, err3) == kExitConfig);
        ::unsetenv("FGR_VERIFY_REL_TOL");
    }
}

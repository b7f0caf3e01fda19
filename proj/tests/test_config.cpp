#include <doctest.h>

#include <filesystem>
#include <string>

#include "fgr/config.hpp"

using namespace fgr;
using namespace fgr::cli;

namespace {

const char* kBase = R"({
  "schema_version": 1,
  "unit": "omega0",
  "model": {"type": "broadband", "lambda": 0.01, "eta": 2, "omega_x": 250},
  "emitter": {"omega0": 1},
  "time_grid": {"t_min": 0.01, "t_max": 100}
})";

std::string error_of(const std::string& text)
{
    try {
        (void)parse_config(text);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

std::string replace(std::string text, const std::string& from, const std::string& to)
{
    const auto pos = text.find(from);
    REQUIRE(pos != std::string::npos);
    return text.replace(pos, from.size(), to);
}

}  // namespace

TEST_SUITE("config")
{
    TEST_CASE("minimal document fills defaults")
    {
        const RunConfig c = parse_config(kBase);
        CHECK(c.unit == Unit::Omega0);
        CHECK(c.time_grid.points_per_decade == 64.0);
        CHECK(c.quadrature == QuadratureConfig{});
        CHECK_FALSE(c.onset_epsilon);
        CHECK(c.output.path.empty());
        CHECK(c.output.format == OutputFormat::Csv);
        const auto& bb = std::get<BroadbandReservoir>(c.model);
        CHECK(bb.eta() == 2.0);
        CHECK(std::holds_alternative<Exponential>(bb.cutoff()));
    }

    TEST_CASE("serialize and parse round-trip bit for bit")
    {
        RunConfig c = parse_config(kBase);
        c.quadrature.rel_tol = 0.1 + 0.2;
        c.quadrature.max_panels = 1234;
        c.onset_epsilon = 1.0 / 3.0;
        c.output = {"out.json", OutputFormat::Json};
        c.time_grid.t_min = 1.0 / 7.0;
        CHECK(parse_config(serialize_config(c)) == c);

        RunConfig nb = c;
        nb.unit = Unit::RadPerS;
        nb.model = NarrowbandReservoir::from_quality(1e12, 10.0, 3.5e14);
        nb.emitter = EmitterSpec(3.5e14 * (1.0 + 1e-15));
        CHECK(parse_config(serialize_config(nb)) == nb);

        RunConfig pl = c;
        pl.model = BroadbandReservoir(0.01, 1.0, 250.0, PowerLorentz{4.5});
        CHECK(parse_config(serialize_config(pl)) == pl);
    }

    TEST_CASE("field-path diagnostics")
    {
        CHECK(error_of(replace(kBase, "\"eta\": 2", "\"eta\": \"two\"")) == "model.eta: expected a number");
        CHECK(error_of(replace(kBase, "\"eta\": 2", "\"eta\": 2, \"etta\": 2")) == "model.etta: unknown key");
        CHECK(error_of(replace(kBase, "\"omega0\"", "\"radians\"")).rfind("unit:", 0) == 0);
        CHECK(error_of(replace(kBase, "\"omega0\": 1", "\"omega0\": 2")).rfind("emitter.omega0:", 0) == 0);
        CHECK(error_of(replace(kBase, "\"t_max\": 100", "\"t_max\": 0.001")).rfind("time_grid.t_max:", 0) == 0);
        CHECK(error_of(replace(kBase, "\"eta\": 2", "\"eta\": -1")).rfind("model:", 0) == 0);
        CHECK(error_of(replace(kBase, "\"schema_version\": 1", "\"schema_version\": 2")).rfind("schema_version:", 0) == 0);
        CHECK(error_of(replace(kBase, "\"lambda\": 0.01, ", "")) == "model.lambda: missing required key");
        CHECK(error_of(replace(kBase, "\"omega_x\": 250", "\"omega_x\": 250, \"cutoff\": {\"kind\": \"gauss\"}"))
                  .rfind("model.cutoff.kind:", 0) == 0);
        CHECK(error_of(replace(kBase, "\"t_max\": 100}", "\"t_max\": 100}, \"quadrature\": {\"nodes_per_panel\": 1}"))
                  .rfind("quadrature:", 0) == 0);
        CHECK(error_of(replace(kBase, "\"t_max\": 100}", "\"t_max\": 100}, \"output\": {\"format\": \"xml\"}"))
                  .rfind("output.format:", 0) == 0);
        CHECK(error_of(replace(kBase, "\"t_max\": 100}", "\"t_max\": 100}, \"onset_epsilon\": 0"))
                  .rfind("onset_epsilon:", 0) == 0);
    }

    TEST_CASE("narrowband takes exactly one of kappa and quality")
    {
        const std::string nb = replace(kBase, R"("type": "broadband", "lambda": 0.01, "eta": 2, "omega_x": 250)",
                                       R"("type": "narrowband", "g": 0.01, "quality": 10, "omega_c": 1)");
        const auto c = parse_config(nb);
        CHECK(std::get<NarrowbandReservoir>(c.model).kappa() == doctest::Approx(0.05));
        CHECK(error_of(replace(nb, "\"quality\": 10", "\"quality\": 10, \"kappa\": 0.05")).rfind("model:", 0) == 0);
        CHECK(error_of(replace(nb, "\"quality\": 10, ", "")).rfind("model:", 0) == 0);
    }

    TEST_CASE("syntax errors report line and column")
    {
        const std::string bad = "{\n  \"schema_version\": 1,\n  \"unit\": omega0\n}";
        const std::string msg = error_of(bad);
        CHECK(msg.rfind("line 3, column", 0) == 0);
        CHECK(msg.find("invalid JSON") != std::string::npos);
    }

    TEST_CASE("missing file")
    {
        CHECK_THROWS_AS(load_config("/nonexistent/fgr.json"), ConfigError);
    }

    TEST_CASE("shipped example configs parse")
    {
        const std::filesystem::path dir = std::filesystem::path(FGR_SOURCE_DIR) / "configs";
        int count = 0;
        for (const auto& entry : std::filesystem::directory_iterator(dir)) {
            if (entry.path().extension() != ".json") continue;
            CAPTURE(entry.path().string());
            CHECK_NOTHROW((void)load_config(entry.path()));
            ++count;
        }
        CHECK(count >= 3);
        const auto plasmonic = load_config(dir / "plasmonic.json");
        CHECK(plasmonic.unit == Unit::RadPerS);
        CHECK(std::get<NarrowbandReservoir>(plasmonic.model).quality_factor() == doctest::Approx(10.0));
    }
}

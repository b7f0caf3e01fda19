#include "fgr/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "fgr/errors.hpp"

namespace fgr::cli {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& message)
{
    throw ConfigError(path + ": " + message);
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

// Object view that remembers where it sits in the document.
class Node {
public:
    Node(const json& value, std::string path) : value_(value), path_(std::move(path))
    {
        if (!value_.is_object()) fail(path_.empty() ? "<root>" : path_, "expected an object");
    }

    void allow_only(std::initializer_list<const char*> keys) const
    {
        for (const auto& item : value_.items()) {
            bool known = false;
            for (const char* k : keys) known = known || item.key() == k;
            if (!known) fail(join(path_, item.key()), "unknown key");
        }
    }

    bool has(const char* key) const { return value_.contains(key); }

    double number(const char* key) const
    {
        const auto& v = require(key);
        if (!v.is_number()) fail(join(path_, key), "expected a number");
        const double x = v.get<double>();
        if (!std::isfinite(x)) fail(join(path_, key), "must be finite");
        return x;
    }

    double number_or(const char* key, double fallback) const { return has(key) ? number(key) : fallback; }

    std::size_t count_or(const char* key, std::size_t fallback) const
    {
        if (!has(key)) return fallback;
        const auto& v = value_.at(key);
        if (!v.is_number_integer() || v.get<long long>() < 0) fail(join(path_, key), "expected a non-negative integer");
        return v.get<std::size_t>();
    }

    std::string text(const char* key) const
    {
        const auto& v = require(key);
        if (!v.is_string()) fail(join(path_, key), "expected a string");
        return v.get<std::string>();
    }

    Node child(const char* key) const { return Node(require(key), join(path_, key)); }
    const std::string& path() const { return path_; }
    std::string at(const char* key) const { return join(path_, key); }

private:
    const json& require(const char* key) const
    {
        if (!value_.contains(key)) fail(join(path_, key), "missing required key");
        return value_.at(key);
    }

    const json& value_;
    std::string path_;
};

CutoffKind parse_cutoff(const Node& node)
{
    const std::string kind = node.text("kind");
    if (kind == "exponential") {
        node.allow_only({"kind"});
        return Exponential{};
    }
    if (kind == "power_lorentz") {
        node.allow_only({"kind", "mu"});
        return PowerLorentz{node.number("mu")};
    }
    fail(node.at("kind"), "expected \"exponential\" or \"power_lorentz\"");
}

Reservoir parse_model(const Node& node)
{
    const std::string type = node.text("type");
    try {
        if (type == "broadband") {
            node.allow_only({"type", "lambda", "eta", "omega_x", "cutoff"});
            const CutoffKind cutoff = node.has("cutoff") ? parse_cutoff(node.child("cutoff")) : CutoffKind{Exponential{}};
            return BroadbandReservoir(node.number("lambda"), node.number("eta"), node.number("omega_x"), cutoff);
        }
        if (type == "narrowband") {
            node.allow_only({"type", "g", "kappa", "quality", "omega_c"});
            if (node.has("kappa") == node.has("quality")) fail(node.path(), "give exactly one of \"kappa\" and \"quality\"");
            if (node.has("quality"))
                return NarrowbandReservoir::from_quality(node.number("g"), node.number("quality"), node.number("omega_c"));
            return NarrowbandReservoir(node.number("g"), node.number("kappa"), node.number("omega_c"));
        }
    } catch (const InvalidModelError& e) {
        fail(node.path(), e.what());
    }
    fail(node.at("type"), "expected \"broadband\" or \"narrowband\"");
}

RunConfig parse_document(const json& doc)
{
    const Node root(doc, "");
    root.allow_only({"schema_version", "unit", "model", "emitter", "time_grid", "quadrature", "onset_epsilon", "output"});

    if (!doc.contains("schema_version") || !doc.at("schema_version").is_number_integer())
        fail("schema_version", "missing or not an integer");
    const int version = doc.at("schema_version").get<int>();
    if (version != kSchemaVersion) fail("schema_version", "unsupported version " + std::to_string(version));

    const std::string unit_name = root.text("unit");
    Unit unit{};
    if (unit_name == "omega0")
        unit = Unit::Omega0;
    else if (unit_name == "rad_per_s")
        unit = Unit::RadPerS;
    else
        fail("unit", "expected \"omega0\" or \"rad_per_s\"");

    Reservoir model = parse_model(root.child("model"));

    const Node em = root.child("emitter");
    em.allow_only({"omega0"});
    const double omega0 = em.number("omega0");
    if (!(omega0 > 0.0)) fail("emitter.omega0", "must be > 0");
    if (unit == Unit::Omega0 && omega0 != 1.0) fail("emitter.omega0", "must be 1 when unit is \"omega0\"");

    const Node tg = root.child("time_grid");
    tg.allow_only({"t_min", "t_max", "points_per_decade"});
    TimeGrid grid{tg.number("t_min"), tg.number("t_max"), tg.number_or("points_per_decade", 64.0)};
    if (!(grid.t_min > 0.0)) fail("time_grid.t_min", "must be > 0");
    if (!(grid.t_max > grid.t_min)) fail("time_grid.t_max", "must exceed t_min");
    if (!(grid.points_per_decade >= 1.0)) fail("time_grid.points_per_decade", "must be >= 1");

    QuadratureConfig quad;
    if (root.has("quadrature")) {
        const Node q = root.child("quadrature");
        q.allow_only({"rel_tol", "abs_tol", "max_panels", "nodes_per_panel", "tail_epsilon"});
        quad.rel_tol = q.number_or("rel_tol", quad.rel_tol);
        quad.abs_tol = q.number_or("abs_tol", quad.abs_tol);
        quad.max_panels = q.count_or("max_panels", quad.max_panels);
        quad.nodes_per_panel = q.count_or("nodes_per_panel", quad.nodes_per_panel);
        quad.tail_epsilon = q.number_or("tail_epsilon", quad.tail_epsilon);
        try {
            quad.validate();
        } catch (const std::invalid_argument& e) {
            fail("quadrature", e.what());
        }
    }

    std::optional<double> epsilon;
    if (root.has("onset_epsilon")) {
        epsilon = root.number("onset_epsilon");
        if (!(*epsilon > 0.0)) fail("onset_epsilon", "must be > 0");
    }

    OutputSpec output;
    if (root.has("output")) {
        const Node out = root.child("output");
        out.allow_only({"path", "format"});
        if (out.has("path")) output.path = out.text("path");
        if (out.has("format")) {
            const std::string fmt = out.text("format");
            if (fmt == "csv")
                output.format = OutputFormat::Csv;
            else if (fmt == "json")
                output.format = OutputFormat::Json;
            else
                fail("output.format", "expected \"csv\" or \"json\"");
        }
    }

    return RunConfig{version, unit, std::move(model), EmitterSpec(omega0), grid, quad, epsilon, output};
}

json model_to_json(const Reservoir& model)
{
    if (const auto* nb = std::get_if<NarrowbandReservoir>(&model))
        return {{"type", "narrowband"}, {"g", nb->g()}, {"kappa", nb->kappa()}, {"omega_c", nb->omega_c()}};
    const auto& bb = std::get<BroadbandReservoir>(model);
    json cutoff = {{"kind", "exponential"}};
    if (const auto* pl = std::get_if<PowerLorentz>(&bb.cutoff())) cutoff = {{"kind", "power_lorentz"}, {"mu", pl->mu}};
    return {{"type", "broadband"}, {"lambda", bb.lambda()}, {"eta", bb.eta()}, {"omega_x", bb.omega_x()},
            {"cutoff", cutoff}};
}

}  // namespace

RunConfig parse_config(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        // byte offset -> line:column
        std::size_t line = 1, col = 1;
        const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t i = 0; i < stop; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ConfigError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": invalid JSON");
    }
    return parse_document(doc);
}

RunConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path.string() + ": cannot open config file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string serialize_config(const RunConfig& config)
{
    json doc = {
        {"schema_version", config.schema_version},
        {"unit", config.unit == Unit::Omega0 ? "omega0" : "rad_per_s"},
        {"model", model_to_json(config.model)},
        {"emitter", {{"omega0", config.emitter.omega0}}},
        {"time_grid",
         {{"t_min", config.time_grid.t_min},
          {"t_max", config.time_grid.t_max},
          {"points_per_decade", config.time_grid.points_per_decade}}},
        {"quadrature",
         {{"rel_tol", config.quadrature.rel_tol},
          {"abs_tol", config.quadrature.abs_tol},
          {"max_panels", config.quadrature.max_panels},
          {"nodes_per_panel", config.quadrature.nodes_per_panel},
          {"tail_epsilon", config.quadrature.tail_epsilon}}},
        {"output",
         {{"path", config.output.path}, {"format", config.output.format == OutputFormat::Csv ? "csv" : "json"}}},
    };
    if (config.onset_epsilon) doc["onset_epsilon"] = *config.onset_epsilon;
    return doc.dump(2) + "\n";
}

}  // namespace fgr::cli

#include "fgr/commands.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "fgr/analytic.hpp"
#include "fgr/errors.hpp"
#include "fgr/onset.hpp"
#include "fgr/quadrature.hpp"

namespace fgr::cli {

namespace {

using nlohmann::json;

constexpr double kFigureLambda = 0.01;
constexpr double kFigureCoupling = 0.01;
constexpr double kFigurePointsPerDecade = 64.0;

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json optional_number(const std::optional<double>& x) { return x ? number_or_null(*x) : json(nullptr); }

// Writes `text` to `path` in one go, or to `fallback` when path is empty.
void emit(const std::string& path, const std::string& text, std::ostream& fallback)
{
    if (path.empty()) {
        fallback << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error(path + ": cannot open for writing");
    file << text;
    if (!file) throw std::runtime_error(path + ": write failed");
}

std::string curve_text(const RateCurve& curve, OutputFormat format)
{
    std::ostringstream os;
    if (format == OutputFormat::Csv)
        write_curve_csv(os, curve);
    else
        write_curve_json(os, curve);
    return os.str();
}

struct FigureCurve {
    std::string file;
    double parameter;
    RateCurve curve;
    std::vector<double> analytic;
};

FigureCurve fig1_curve(double eta, unsigned threads)
{
    const BroadbandReservoir bb(kFigureLambda, eta, 250.0);
    const EmitterSpec emitter(1.0);
    const auto times = log_time_grid(1e-3, 1e5, kFigurePointsPerDecade);
    FigureCurve fc{"fig1_eta_" + format_double(eta) + ".csv", eta, rate_curve(bb, emitter, times, {}, threads), {}};
    for (double t : times) fc.analytic.push_back(broadband_ratio_analytic(bb, emitter, t));
    return fc;
}

FigureCurve narrowband_figure_curve(const std::string& file, double parameter, double quality, double detuning_ratio,
                                    unsigned threads)
{
    const auto nb = NarrowbandReservoir::from_quality(kFigureCoupling, quality, 1.0);
    const EmitterSpec emitter(nb.omega_c() + detuning_ratio * nb.kappa());
    const auto times = log_time_grid(1e-2 / nb.kappa(), 1e2 / nb.kappa(), kFigurePointsPerDecade);
    FigureCurve fc{file, parameter, rate_curve(nb, emitter, times, {}, threads), {}};
    for (double t : times) fc.analytic.push_back(narrowband_rate_detuned(nb, emitter, t));
    return fc;
}

}  // namespace

std::string format_double(double x)
{
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    if (ec != std::errc{}) return "nan";
    return std::string(buf.data(), ptr);
}

void write_curve_csv(std::ostream& out, const RateCurve& curve, const std::vector<ExtraColumn>& extra)
{
    out << kCsvHeader;
    for (const auto& col : extra) out << ',' << col.name;
    out << '\n';
    for (std::size_t i = 0; i < curve.size(); ++i) {
        const double t = curve.times[i];
        out << format_double(t) << ',' << format_double(t / curve.metadata.time_scale) << ','
            << format_double(curve.ratios[i]) << ',' << format_double(curve.error_estimates[i]) << ','
            << curve.regime_labels[i] << ',' << (curve.flagged[i] ? 1 : 0);
        for (const auto& col : extra) out << ',' << format_double(col.values.at(i));
        out << '\n';
    }
}

void write_curve_json(std::ostream& out, const RateCurve& curve)
{
    std::vector<double> dimensionless;
    for (double t : curve.times) dimensionless.push_back(t / curve.metadata.time_scale);
    std::vector<bool> flagged(curve.flagged.begin(), curve.flagged.end());
    json doc = {
        {"metadata",
         {{"description", curve.metadata.description},
          {"time_scale", curve.metadata.time_scale},
          {"dimensionless_time", curve.metadata.dimensionless_time},
          {"gamma0", curve.metadata.gamma0},
          {"rel_tol", curve.metadata.rel_tol},
          {"abs_tol", curve.metadata.abs_tol}}},
        {"t", curve.times},
        {"t_dimensionless", dimensionless},
        {"gamma_ratio", curve.ratios},
        {"abs_err_est", curve.error_estimates},
        {"regime", curve.regime_labels},
        {"flagged", flagged},
    };
    out << doc.dump(2) << '\n';
}

std::vector<double> config_times(const RunConfig& config)
{
    return log_time_grid(config.time_grid.t_min, config.time_grid.t_max, config.time_grid.points_per_decade);
}

int cmd_rate(const RunConfig& config, unsigned threads, std::ostream& out, std::ostream& err)
{
    const auto times = config_times(config);
    const RateCurve curve = rate_curve(config.model, config.emitter, times, config.quadrature, threads);
    emit(config.output.path, curve_text(curve, config.output.format), out);
    if (curve.any_flagged()) {
        err << "fgr rate: some points did not reach the requested tolerance (see the flagged column)\n";
        return kExitPartialConvergence;
    }
    return kExitOk;
}

int cmd_onset(const RunConfig& config, std::optional<double> epsilon, unsigned threads, std::ostream& out,
              std::ostream& err)
{
    const double eps = epsilon ? *epsilon : config.onset_epsilon.value_or(default_onset_epsilon(config.model));
    if (!(eps > 0.0)) {
        err << "fgr onset: epsilon must be > 0\n";
        return kExitConfig;
    }

    double t_f_analytic = std::numeric_limits<double>::quiet_NaN();
    try {
        t_f_analytic = onset_time_analytic(config.model, config.emitter);
    } catch (const IllPosedError& e) {
        err << "fgr onset: no analytic onset time: " << e.what() << '\n';
    }

    const auto times = config_times(config);
    const RateCurve curve = rate_curve(config.model, config.emitter, times, config.quadrature, threads);

    std::optional<double> empirical;
    bool suffix_flagged = false;
    try {
        empirical = empirical_onset(curve, eps);
    } catch (const CurveError& e) {
        err << "fgr onset: " << e.what() << '\n';
        suffix_flagged = true;
    }
    const OnsetReport report = make_onset_report(t_f_analytic, empirical, eps, !curve.any_flagged());

    json doc = {
        {"t_f_analytic", number_or_null(report.t_f_analytic)},
        {"t_f_empirical", optional_number(report.t_f_empirical)},
        {"epsilon", report.epsilon},
        {"agreement_factor", optional_number(report.agreement_factor)},
        {"converged", report.converged},
        {"time_scale", curve.metadata.time_scale},
        {"dimensionless_time", curve.metadata.dimensionless_time},
        {"model", curve.metadata.description},
    };
    const std::string text = doc.dump(2) + "\n";
    emit(config.output.format == OutputFormat::Json ? config.output.path : std::string{}, text, out);

    if (suffix_flagged) return kExitPartialConvergence;
    if (!report.t_f_empirical) {
        err << "fgr onset: no grid suffix stays within epsilon of the golden-rule rate\n";
        return kExitOnsetNotFound;
    }
    return report.converged ? kExitOk : kExitPartialConvergence;
}

int cmd_figure(std::string_view figure_id, const std::filesystem::path& directory, unsigned threads,
               std::ostream& out, std::ostream& err)
{
    std::vector<FigureCurve> curves;
    json markers = {{"figure", std::string(figure_id)}};

    if (figure_id == "fig1") {
        const EmitterSpec emitter(1.0);
        json onsets = json::array();
        for (double eta : {0.5, 1.0, 1.5, 2.0, 3.0}) {
            curves.push_back(fig1_curve(eta, threads));
            const double t_f = onset_time_broadband(BroadbandReservoir(kFigureLambda, eta, 250.0), emitter);
            onsets.push_back({{"eta", eta}, {"t_f", t_f}, {"t_dimensionless", t_f * emitter.omega0}});
        }
        markers["reference_ratios"] = json::array({{{"value", 2.0}, {"applies_to", "eta > 1"}}});
        markers["onset_times"] = onsets;
        markers["omega_x_over_omega0"] = 250.0;
    } else if (figure_id == "fig2") {
        json onsets = json::array();
        for (double q : {1.0, 10.0, 100.0, 1000.0}) {
            curves.push_back(narrowband_figure_curve("fig2_Q_" + format_double(q) + ".csv", q, q, 0.0, threads));
            const auto nb = NarrowbandReservoir::from_quality(kFigureCoupling, q, 1.0);
            onsets.push_back({{"quality", q}, {"t_f", 2.0 * q / nb.omega_c()}, {"t_dimensionless", 1.0}});
        }
        markers["reference_ratios"] = json::array({{{"value", std::exp(-1.0)}, {"label", "1/e"}}});
        markers["onset_times"] = onsets;
    } else if (figure_id == "fig3") {
        json classes = json::array();
        for (double d : {0.0, 0.4, 1.0, 2.0, 5.0}) {
            curves.push_back(
                narrowband_figure_curve("fig3_detuning_" + format_double(d) + ".csv", d, 10.0, d, threads));
            classes.push_back({{"detuning_over_kappa", d},
                               {"classification", to_string(zeno_classifier(curves.back().curve))}});
        }
        markers["reference_ratios"] = json::array({{{"value", 1.0}, {"label", "golden rule"}}});
        markers["quality"] = 10.0;
        markers["classification"] = classes;
    } else {
        err << "fgr figure: unknown figure '" << figure_id << "' (expected fig1, fig2 or fig3)\n";
        return kExitConfig;
    }

    std::filesystem::create_directories(directory);
    bool flagged = false;
    for (const auto& fc : curves) {
        std::ostringstream os;
        const std::vector<ExtraColumn> extra{
            {"parameter", std::vector<double>(fc.curve.size(), fc.parameter)},
            {"analytic_ratio", fc.analytic},
        };
        write_curve_csv(os, fc.curve, extra);
        emit((directory / fc.file).string(), os.str(), out);
        out << (directory / fc.file).string() << '\n';
        flagged = flagged || fc.curve.any_flagged();
    }
    emit((directory / "markers.json").string(), markers.dump(2) + "\n", out);
    out << (directory / "markers.json").string() << '\n';
    if (flagged) {
        err << "fgr figure: some points did not reach the requested tolerance\n";
        return kExitPartialConvergence;
    }
    return kExitOk;
}

std::vector<OracleCase> oracle_sample_grid()
{
    const EmitterSpec unit(1.0);
    std::vector<OracleCase> grid;
    auto narrow = [&](double q, double detuning, double kappa_t) {
        const auto nb = NarrowbandReservoir::from_quality(kFigureCoupling, q, 1.0);
        const EmitterSpec em(nb.omega_c() + detuning * nb.kappa());
        grid.push_back({"narrowband Q=" + format_double(q) + " detuning/kappa=" + format_double(detuning) +
                            " kappa_t=" + format_double(kappa_t),
                        nb, em, kappa_t / nb.kappa()});
    };
    auto broad = [&](double eta, double omega_x, CutoffKind cutoff, double w0t) {
        const BroadbandReservoir bb(kFigureLambda, eta, omega_x, cutoff);
        grid.push_back({"broadband eta=" + format_double(eta) + " omega_x=" + format_double(omega_x) + " " +
                            describe(cutoff) + " omega0_t=" + format_double(w0t),
                        bb, unit, w0t});
    };

    narrow(10.0, 0.0, 0.01);
    narrow(10.0, 0.0, 1.0);
    narrow(10.0, 0.0, 100.0);
    narrow(1.0, 0.0, 1.0);
    narrow(1000.0, 0.0, 1.0);
    narrow(10.0, 2.0, 1.0);
    narrow(10.0, 5.0, 10.0);

    broad(0.5, 250.0, Exponential{}, 0.01);
    broad(0.5, 250.0, Exponential{}, 1.0);
    broad(0.5, 250.0, Exponential{}, 100.0);
    broad(1.0, 250.0, Exponential{}, 0.1);
    broad(1.0, 250.0, Exponential{}, 10.0);
    broad(2.0, 250.0, Exponential{}, 1.0);
    broad(2.0, 250.0, Exponential{}, 100.0);
    broad(3.0, 250.0, Exponential{}, 10.0);
    broad(1.5, 100.0, Exponential{}, 3.0);

    broad(1.0, 250.0, PowerLorentz{4.0}, 0.1);
    broad(1.0, 250.0, PowerLorentz{4.0}, 1.0);
    broad(1.0, 250.0, PowerLorentz{4.0}, 10.0);
    broad(2.0, 250.0, PowerLorentz{3.0}, 1.0);
    return grid;
}

double oracle_threshold(double rel_tol) { return std::max(rel_tol * 1e2, 1e-8); }

int cmd_verify(std::optional<double> rel_tol, std::ostream& out, std::ostream& err)
{
    double tol = rel_tol.value_or(1e-10);
    if (!rel_tol) {
        if (const char* raw = std::getenv("FGR_VERIFY_REL_TOL")) {
            char* end = nullptr;
            tol = std::strtod(raw, &end);
            if (end == raw || *end != '\0' || !(tol > 0.0) || !(tol < 1.0)) {
                err << "fgr verify: FGR_VERIFY_REL_TOL must be a number in (0, 1)\n";
                return kExitConfig;
            }
        }
    }
    QuadratureConfig cfg;
    cfg.rel_tol = tol;

    int failures = 0;
    auto report = [&](bool ok, const std::string& name, const std::string& detail) {
        out << (ok ? "PASS " : "FAIL ") << name << "  " << detail << '\n';
        if (!ok) ++failures;
    };
    auto numeric = [&](const Reservoir& r, const EmitterSpec& e, double t) {
        try {
            return decay_rate_numeric(r, e, t, cfg);
        } catch (const ConvergenceError& ex) {
            return ex.best();
        }
    };

    const double threshold = oracle_threshold(tol);
    out << "rel_tol " << format_double(tol) << ", oracle threshold " << format_double(threshold) << '\n';
    for (const auto& c : oracle_sample_grid()) {
        std::string detail;
        bool ok = false;
        try {
            const auto a = decay_rate_numeric(c.reservoir, c.emitter, c.t, cfg);
            const auto b = decay_rate_numeric_oracle(c.reservoir, c.emitter, c.t, cfg);
            const double rel = std::abs(a.value - b.value) / b.value;
            ok = rel <= threshold;
            detail = "rel_diff=" + format_double(rel);
        } catch (const ConvergenceError& ex) {
            detail = std::string("not converged: ") + ex.what();
        }
        report(ok, "oracle " + c.name, detail);
    }

    // closed form vs numeric, narrowband, where the negative-frequency extension is negligible
    {
        const auto nb = NarrowbandReservoir::from_quality(kFigureCoupling, 1000.0, 1.0);
        const EmitterSpec em(1.0);
        const double t = 1.0 / nb.kappa();
        const double ratio = numeric(nb, em, t).value / golden_rule_rate(nb, em);
        const double rel = std::abs(ratio / narrowband_rate_resonant(nb, t) - 1.0);
        report(rel < 5e-3, "narrowband closed form Q=1000 kappa_t=1", "rel_diff=" + format_double(rel));
    }

    const EmitterSpec unit(1.0);
    // resonant regime: analytic and numeric agree once t >> t_F
    for (const auto& [eta, w0t] : {std::pair{0.5, 1e3}, std::pair{2.0, 1e4}}) {
        const BroadbandReservoir bb(kFigureLambda, eta, 250.0);
        const double ratio = numeric(bb, unit, w0t).value / golden_rule_rate(bb, unit);
        const double rel = std::abs(broadband_ratio_analytic(bb, unit, w0t) / ratio - 1.0);
        report(rel < 1e-2, "resonant regime eta=" + format_double(eta) + " omega0_t=" + format_double(w0t),
               "rel_diff=" + format_double(rel));
    }
    // cutoff regime: the step-cutoff closed form undershoots by exactly 1/Γ(η+2)
    for (double eta : {0.5, 1.0, 2.0}) {
        const BroadbandReservoir bb(kFigureLambda, eta, 250.0);
        const double t = 1e-3 / bb.omega_x();
        const double ratio = numeric(bb, unit, t).value / golden_rule_rate(bb, unit);
        const double rel = std::abs(broadband_ratio_analytic(bb, unit, t) / ratio * std::tgamma(eta + 2.0) - 1.0);
        report(rel < 2e-2, "cutoff regime eta=" + format_double(eta), "rel_diff=" + format_double(rel));
    }
    // Zeno law Γ(t) ≈ A t
    for (double eta : {0.5, 1.0, 2.0}) {
        const BroadbandReservoir bb(kFigureLambda, eta, 250.0);
        const double t = 1e-3 / bb.omega_x();
        const double rel = std::abs(numeric(bb, unit, t).value / (zeno_slope(bb) * t) - 1.0);
        report(rel < 1e-2, "zeno slope eta=" + format_double(eta), "rel_diff=" + format_double(rel));
    }

    out << (failures == 0 ? "all checks passed" : std::to_string(failures) + " check(s) failed") << '\n';
    return failures == 0 ? kExitOk : kExitVerifyFailure;
}

}  // namespace fgr::cli

#include "fgr/onset.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "fgr/analytic.hpp"
#include "fgr/errors.hpp"
#include "fgr/quadrature.hpp"

namespace fgr {

namespace {

constexpr double kPerturbativeLimit = 0.1;
constexpr std::size_t kMinFitPoints = 10;

}  // namespace

std::optional<double> empirical_onset(const RateCurve& curve, double epsilon)
{
    if (!(epsilon > 0.0)) throw DomainError("empirical_onset: epsilon must be > 0");
    if (curve.size() == 0) throw CurveError("empirical_onset: empty curve");
    curve.validate();

    std::size_t start = curve.size();
    while (start > 0 && std::abs(curve.ratios[start - 1] - 1.0) <= epsilon) --start;
    if (start == curve.size()) return std::nullopt;
    for (std::size_t i = start; i < curve.size(); ++i)
        if (curve.flagged[i]) throw CurveError("empirical_onset: non-converged point inside the qualifying suffix");
    return curve.times[start];
}

std::string to_string(Validity validity)
{
    return validity == Validity::PerturbativeOk ? "perturbative-ok" : "outside-perturbative-validity";
}

SurvivalProbability survival_probability(double t, double gamma)
{
    if (!(t > 0.0)) throw DomainError("survival_probability: t must be > 0");
    if (!(gamma >= 0.0)) throw DomainError("survival_probability: gamma must be >= 0");
    const double decay = gamma * t;
    return {1.0 - decay, decay <= kPerturbativeLimit ? Validity::PerturbativeOk : Validity::OutsidePerturbativeValidity};
}

std::string to_string(ZenoClass zeno_class)
{
    return zeno_class == ZenoClass::ZenoOnly ? "zeno-only" : "anti-zeno";
}

ZenoClass zeno_classifier(const RateCurve& curve, double threshold)
{
    if (!(threshold >= 0.0)) throw DomainError("zeno_classifier: threshold must be >= 0");
    if (curve.size() == 0) throw CurveError("zeno_classifier: empty curve");
    curve.validate();
    const double scale = curve.metadata.time_scale;
    const double slack = 1e-9;
    if (curve.times.front() > 1e-2 * scale * (1.0 + slack) || curve.times.back() < 1e2 * scale * (1.0 - slack))
        throw CurveError("zeno_classifier: curve must cover [1e-2, 1e2] time scales");
    double peak = -std::numeric_limits<double>::infinity();
    for (double r : curve.ratios) peak = std::max(peak, r);
    return peak > 1.0 + threshold ? ZenoClass::AntiZeno : ZenoClass::ZenoOnly;
}

double tail_slope_fit(const RateCurve& curve, double t_lo, double t_hi)
{
    if (!(t_lo > 0.0) || !(t_hi > t_lo)) throw DomainError("tail_slope_fit: need 0 < t_lo < t_hi");
    curve.validate();
    const double slack = 1e-9;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < curve.size(); ++i) {
        const double t = curve.times[i];
        if (t < t_lo * (1.0 - slack) || t > t_hi * (1.0 + slack)) continue;
        const double dev = std::abs(curve.ratios[i] - 1.0);
        if (!(dev > 0.0)) continue;
        const double x = std::log(t);
        const double y = std::log(dev);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < kMinFitPoints) throw CurveError("tail_slope_fit: fewer than 10 usable points in the window");
    const double dn = static_cast<double>(n);
    const double denom = dn * sxx - sx * sx;
    return (dn * sxy - sx * sy) / denom;
}

OnsetReport make_onset_report(double t_f_analytic, std::optional<double> t_f_empirical, double epsilon,
                              bool converged)
{
    if (!(epsilon > 0.0)) throw DomainError("onset report: epsilon must be > 0");
    OnsetReport report{t_f_analytic, t_f_empirical, epsilon, std::nullopt, converged};
    if (t_f_empirical && t_f_analytic > 0.0) report.agreement_factor = *t_f_empirical / t_f_analytic;
    return report;
}

double onset_time_analytic(const Reservoir& reservoir, const EmitterSpec& emitter)
{
    if (const auto* nb = std::get_if<NarrowbandReservoir>(&reservoir)) return onset_time_narrowband(*nb);
    return onset_time_broadband(std::get<BroadbandReservoir>(reservoir), emitter);
}

double default_onset_epsilon(const Reservoir& reservoir)
{
    const double relaxed = 1.0 - std::exp(-1.0);
    if (const auto* bb = std::get_if<BroadbandReservoir>(&reservoir))
        return bb->eta() > 1.0 && !is_unit_exponent(bb->eta()) ? 1.0 : relaxed;
    return relaxed;
}

RateCurve narrowband_closed_form_curve(const NarrowbandReservoir& reservoir, const EmitterSpec& emitter,
                                       std::span<const double> times)
{
    const Reservoir model = reservoir;
    RateCurve curve;
    curve.times.assign(times.begin(), times.end());
    for (double t : times) {
        curve.ratios.push_back(narrowband_rate_detuned(reservoir, emitter, t));
        curve.error_estimates.push_back(0.0);
        curve.regime_labels.push_back(regime_label(model, emitter, t));
        curve.flagged.push_back(false);
    }
    curve.metadata.description = describe(model, emitter) + "; closed form";
    curve.metadata.time_scale = 1.0 / reservoir.kappa();
    curve.metadata.dimensionless_time = "kappa_t";
    curve.metadata.gamma0 = golden_rule_rate(model, emitter);
    curve.validate();
    return curve;
}

}  // namespace fgr

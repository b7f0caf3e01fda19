#include "fgr/analytic.hpp"

#include <cmath>
#include <numbers>

#include "fgr/errors.hpp"
#include "fgr/kernel.hpp"

namespace fgr {

namespace {

constexpr double kUnitEtaTolerance = 1e-9;
constexpr double kPi = std::numbers::pi;

// η - ⌊η⌋, with near-integers snapped to 0
double fractional_part(double eta)
{
    const double nearest = std::round(eta);
    if (std::abs(eta - nearest) < kUnitEtaTolerance) return 0.0;
    return eta - std::floor(eta);
}

void require_positive_time(double t, const char* what)
{
    if (!(t > 0.0)) throw DomainError(std::string(what) + ": t must be > 0");
}

// (1 - e^{-x}) / x, exact down to x -> 0
double relaxation_factor(double x) { return -std::expm1(-x) / x; }

}  // namespace

std::string to_string(Regime regime)
{
    switch (regime) {
    case Regime::Cutoff: return "cutoff";
    case Regime::Intermediate: return "intermediate";
    case Regime::Resonant: return "resonant";
    }
    return "unknown";
}

bool is_unit_exponent(double eta) noexcept { return std::abs(eta - 1.0) < kUnitEtaTolerance; }

Visibility Visibility::from_detuning(double detuning, double kappa)
{
    if (!(kappa > 0.0)) throw DomainError("visibility: kappa must be > 0");
    const double r = detuning / kappa;
    const double r2 = r * r;
    return {(1.0 - r2) / (1.0 + r2)};
}

Regime classify_regime(const BroadbandReservoir& reservoir, const EmitterSpec& emitter, double t,
                       const RegimeThresholds& thresholds)
{
    require_positive_time(t, "classify_regime");
    if (reservoir.omega_x() < thresholds.min_separation * emitter.omega0)
        throw IllPosedError("classify_regime: omega_x must exceed omega0 by the configured separation");
    if (reservoir.omega_x() * t < thresholds.cutoff) return Regime::Cutoff;
    if (emitter.omega0 * t > thresholds.resonant) return Regime::Resonant;
    return Regime::Intermediate;
}

double broadband_resonant_part(const BroadbandReservoir& reservoir, const EmitterSpec& emitter, double t,
                               Regime regime)
{
    require_positive_time(t, "broadband_resonant_part");
    const double gamma0 = golden_rule_rate_approx(reservoir, emitter);
    const double w0t = emitter.omega0 * t;
    const double p = fractional_part(reservoir.eta()) + 1.0;
    switch (regime) {
    case Regime::Cutoff: {
        const double c = cutoff_constant(reservoir.cutoff());
        return c / (2.0 * kPi * p) * std::pow(reservoir.omega_x() / emitter.omega0, p) * w0t * gamma0;
    }
    case Regime::Intermediate:
        return 1.0 / (2.0 * kPi * p) * std::pow(1.0 + kPi / w0t, p) * w0t * gamma0;
    case Regime::Resonant:
        return gamma0;
    }
    return gamma0;
}

double broadband_tail_part(const BroadbandReservoir& reservoir, const EmitterSpec& emitter, double t,
                           Regime regime)
{
    require_positive_time(t, "broadband_tail_part");
    const double eta = reservoir.eta();
    if (eta < 1.0 && !is_unit_exponent(eta)) return 0.0;

    const double gamma0 = golden_rule_rate_approx(reservoir, emitter);
    const double c = cutoff_constant(reservoir.cutoff());
    const double ratio = reservoir.omega_x() / emitter.omega0;
    const double w0t = emitter.omega0 * t;

    if (regime == Regime::Cutoff) return c / (2.0 * kPi * (eta + 1.0)) * std::pow(ratio, eta + 1.0) * w0t * gamma0;
    // intermediate and resonant share one expression
    if (is_unit_exponent(eta)) return c / kPi * std::log(ratio) / w0t * gamma0;
    return c / (kPi * (eta - 1.0)) * std::pow(ratio, eta - 1.0) / w0t * gamma0;
}

BroadbandRateParts broadband_rate_analytic(const BroadbandReservoir& reservoir, const EmitterSpec& emitter,
                                           double t, const RegimeThresholds& thresholds)
{
    const Regime regime = classify_regime(reservoir, emitter, t, thresholds);
    return {broadband_resonant_part(reservoir, emitter, t, regime), broadband_tail_part(reservoir, emitter, t, regime),
            regime};
}

double broadband_ratio_analytic(const BroadbandReservoir& reservoir, const EmitterSpec& emitter, double t,
                                Normalization normalization, const RegimeThresholds& thresholds)
{
    const auto parts = broadband_rate_analytic(reservoir, emitter, t, thresholds);
    const double gamma0 = normalization == Normalization::Exact ? golden_rule_rate(reservoir, emitter)
                                                                : golden_rule_rate_approx(reservoir, emitter);
    return parts.total() / gamma0;
}

double onset_time_broadband(const BroadbandReservoir& reservoir, const EmitterSpec& emitter)
{
    const double w0 = emitter.omega0;
    if (!(reservoir.omega_x() > w0)) throw IllPosedError("onset_time_broadband: need omega_x > omega0");
    const double eta = reservoir.eta();
    const double ratio = reservoir.omega_x() / w0;
    if (is_unit_exponent(eta)) return cutoff_constant(reservoir.cutoff()) * std::log(ratio) / (kPi * w0);
    if (eta < 1.0) return 1.0 / w0;
    return cutoff_constant(reservoir.cutoff()) / (kPi * (eta - 1.0)) * std::pow(ratio, eta - 1.0) / w0;
}

double narrowband_rate_resonant(const NarrowbandReservoir& reservoir, double t)
{
    require_positive_time(t, "narrowband_rate_resonant");
    return 1.0 - relaxation_factor(reservoir.kappa() * t);
}

double narrowband_rate_detuned(const NarrowbandReservoir& reservoir, const EmitterSpec& emitter, double t)
{
    require_positive_time(t, "narrowband_rate_detuned");
    const double kappa = reservoir.kappa();
    const double delta = emitter.omega0 - reservoir.omega_c();
    const double v = Visibility::from_detuning(delta, kappa).value;
    const double x = kappa * t;
    const double decay = std::exp(-x);

    // 1 - cos(Δt)e^{-x} = (1 - e^{-x}) + e^{-x}·2sin²(Δt/2)
    const double half = std::sin(0.5 * delta * t);
    const double bracket = relaxation_factor(x) + decay * 2.0 * half * half / x;
    const double oscillating = (1.0 - v) == 0.0 ? 0.0 : (1.0 - v) * sinc(delta * t) * decay;
    return 1.0 - v * bracket - oscillating;
}

double onset_time_narrowband(const NarrowbandReservoir& reservoir) { return 1.0 / reservoir.kappa(); }

}  // namespace fgr

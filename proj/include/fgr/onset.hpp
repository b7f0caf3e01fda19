// onset.hpp: empirical Fermi-onset detection, survival probability and
// Zeno/anti-Zeno classification on sampled rate curves

#pragma once

#include <optional>
#include <span>
#include <string>

#include "fgr/rate_curve.hpp"
#include "fgr/reservoir.hpp"

namespace fgr {

// Smallest grid time t* with |ratio(t')-1| <= epsilon for every grid t' >= t*.
// std::nullopt if even the last point fails. Throws DomainError for
// epsilon <= 0, CurveError for an empty curve or a flagged point in the suffix.
std::optional<double> empirical_onset(const RateCurve& curve, double epsilon);

enum class Validity { PerturbativeOk, OutsidePerturbativeValidity };

std::string to_string(Validity validity);

struct SurvivalProbability {
    double value;       // 1 - Γt, never clamped
    Validity validity;  // PerturbativeOk iff Γt <= 0.1
};

// Throws DomainError for t <= 0 or Γ < 0.
SurvivalProbability survival_probability(double t, double gamma);

enum class ZenoClass { ZenoOnly, AntiZeno };

std::string to_string(ZenoClass zeno_class);

inline constexpr double kAntiZenoThreshold = 1e-2;

// AntiZeno iff max ratio > 1 + threshold. The curve must span at least
// [10⁻², 10²] in units of its metadata time scale, else CurveError.
ZenoClass zeno_classifier(const RateCurve& curve, double threshold = kAntiZenoThreshold);

// Least-squares slope of log|ratio-1| against log t over grid points in
// [t_lo, t_hi] with ratio != 1. CurveError with fewer than 10 such points.
double tail_slope_fit(const RateCurve& curve, double t_lo, double t_hi);

struct OnsetReport {
    double t_f_analytic{0.0};
    std::optional<double> t_f_empirical;
    double epsilon{1.0};
    std::optional<double> agreement_factor;  // empirical / analytic
    bool converged{true};
};

OnsetReport make_onset_report(double t_f_analytic, std::optional<double> t_f_empirical, double epsilon,
                              bool converged);

// t_F from the closed forms: 1/κ for narrowband, the η-dependent law for broadband.
double onset_time_analytic(const Reservoir& reservoir, const EmitterSpec& emitter);

// 1-1/e for narrowband and broadband η <= 1, 1 for broadband η > 1.
double default_onset_epsilon(const Reservoir& reservoir);

// Narrowband Γ(t)/Γ₀ from the detuned closed form on the given grid; labels
// and metadata as rate_curve() would produce, zero error estimates.
RateCurve narrowband_closed_form_curve(const NarrowbandReservoir& reservoir, const EmitterSpec& emitter,
                                       std::span<const double> times);

}  // namespace fgr

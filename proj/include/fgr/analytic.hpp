// analytic.hpp: closed-form regime approximations of Γ(t) and onset times t_F
//
// Broadband formulas are written against the approximate golden-rule rate
// golden_rule_rate_approx() exactly as derived for a step-like cutoff with
// mass Cω_X. Narrowband formulas are exact for the Lorentzian RSC extended to
// negative frequencies.

#pragma once

#include <string>
#include <vector>

#include "fgr/reservoir.hpp"

namespace fgr {

enum class Regime { Cutoff, Intermediate, Resonant };

std::string to_string(Regime regime);

struct RegimeThresholds {
    double cutoff{0.1};           // Cutoff if ω_X t < cutoff
    double resonant{10.0};        // Resonant if ω₀ t > resonant
    double min_separation{100.0}; // ω_X / ω₀ below this is ill-posed
};

struct BroadbandRateParts {
    double resonant_part{0.0};
    double tail_part{0.0};
    Regime regime{Regime::Resonant};
    double total() const noexcept { return resonant_part + tail_part; }
};

// V = [1-(Δ/κ)²]/[1+(Δ/κ)²]
struct Visibility {
    double value;
    static Visibility from_detuning(double detuning, double kappa);
};

enum class Normalization { Exact, Approximate };

// Throws IllPosedError when ω_X < min_separation·ω₀, DomainError for t <= 0.
Regime classify_regime(const BroadbandReservoir& reservoir, const EmitterSpec& emitter, double t,
                       const RegimeThresholds& thresholds = {});

double broadband_resonant_part(const BroadbandReservoir& reservoir, const EmitterSpec& emitter, double t,
                               Regime regime);
double broadband_tail_part(const BroadbandReservoir& reservoir, const EmitterSpec& emitter, double t,
                           Regime regime);
BroadbandRateParts broadband_rate_analytic(const BroadbandReservoir& reservoir, const EmitterSpec& emitter,
                                           double t, const RegimeThresholds& thresholds = {});

// Γ^res + Γ^tail divided by Γ₀, with Γ₀ exact (2πR(ω₀)) or approximate.
double broadband_ratio_analytic(const BroadbandReservoir& reservoir, const EmitterSpec& emitter, double t,
                                Normalization normalization = Normalization::Exact,
                                const RegimeThresholds& thresholds = {});

// t_F: 1/ω₀ (η<1); (1/π)(C/(η-1))(ω_X/ω₀)^(η-1)/ω₀ (η>1); (1/π)C ln(ω_X/ω₀)/ω₀ (η=1).
double onset_time_broadband(const BroadbandReservoir& reservoir, const EmitterSpec& emitter);

// Γ(t)/Γ₀ = 1 - (1-e^{-κt})/(κt) for ω₀ = ω_c.
double narrowband_rate_resonant(const NarrowbandReservoir& reservoir, double t);

// Γ(t)/Γ₀ = 1 - V[1-cos(Δt)e^{-κt}]/(κt) - (1-V) sinc(Δt) e^{-κt}, Δ = ω₀ - ω_c.
double narrowband_rate_detuned(const NarrowbandReservoir& reservoir, const EmitterSpec& emitter, double t);

// t_F = 1/κ = 2Q/ω_c
double onset_time_narrowband(const NarrowbandReservoir& reservoir);

// True when |η - 1| is below the representation-noise threshold used for dispatch.
bool is_unit_exponent(double eta) noexcept;

}  // namespace fgr

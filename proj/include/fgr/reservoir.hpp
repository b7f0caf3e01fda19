// reservoir.hpp: reservoir coupling spectrum (RSC) models R(ω)
//
// All frequencies are angular frequencies in one user-chosen unit. R(ω) is
// normalised so that 2πR(ω₀) is a decay rate in that unit.

#pragma once

#include <string>
#include <variant>
#include <vector>

namespace fgr {

// F_X(ω) = exp(-ω/ω_X)
struct Exponential {
    friend bool operator==(const Exponential&, const Exponential&) = default;
};

// F_X(ω) = [1 + (ω/ω_X)²]^(-μ), μ > 1/2
struct PowerLorentz {
    double mu{4.0};
    friend bool operator==(const PowerLorentz&, const PowerLorentz&) = default;
};

using CutoffKind = std::variant<Exponential, PowerLorentz>;

// F_X evaluated at x = ω/ω_X.
double cutoff_function(const CutoffKind& cutoff, double x);

std::string describe(const CutoffKind& cutoff);

// Power-law RSC  R(ω) = λ ω (ω/ω_X)^(η-1) F_X(ω).
class BroadbandReservoir {
public:
    BroadbandReservoir(double lambda, double eta, double omega_x, CutoffKind cutoff = Exponential{});

    double lambda() const noexcept { return lambda_; }
    double eta() const noexcept { return eta_; }
    double omega_x() const noexcept { return omega_x_; }
    const CutoffKind& cutoff() const noexcept { return cutoff_; }

    // Unchecked R(ω) for ω >= 0; the hot path of the integrators.
    double rsc(double omega) const noexcept;

    // Non-fatal deviations from the usual parameter ranges (μ < 4, λ not small).
    std::vector<std::string> warnings() const;

    BroadbandReservoir with_lambda(double lambda) const { return {lambda, eta_, omega_x_, cutoff_}; }

    friend bool operator==(const BroadbandReservoir&, const BroadbandReservoir&) = default;

private:
    double lambda_;
    double eta_;
    double omega_x_;
    CutoffKind cutoff_;
};

// Breit–Wigner (Lorentzian) RSC  R(ω) = (κ/π) g² / ((ω-ω_c)² + κ²).
class NarrowbandReservoir {
public:
    NarrowbandReservoir(double g, double kappa, double omega_c);

    // Construct from the quality factor Q = ω_c/(2κ).
    static NarrowbandReservoir from_quality(double g, double quality, double omega_c);

    double g() const noexcept { return g_; }
    double kappa() const noexcept { return kappa_; }
    double omega_c() const noexcept { return omega_c_; }
    double quality_factor() const noexcept { return omega_c_ / (2.0 * kappa_); }

    double rsc(double omega) const noexcept;

    NarrowbandReservoir with_g(double g) const { return {g, kappa_, omega_c_}; }

    friend bool operator==(const NarrowbandReservoir&, const NarrowbandReservoir&) = default;

private:
    double g_;
    double kappa_;
    double omega_c_;
};

using Reservoir = std::variant<BroadbandReservoir, NarrowbandReservoir>;

struct EmitterSpec {
    explicit EmitterSpec(double omega0);
    double omega0;
    friend bool operator==(const EmitterSpec&, const EmitterSpec&) = default;
};

std::string describe(const Reservoir& reservoir);
std::string describe(const Reservoir& reservoir, const EmitterSpec& emitter);

// R(ω); throws DomainError for ω < 0.
double evaluate_rsc(const Reservoir& reservoir, double omega);

// Γ₀ = 2πR(ω₀), the exact golden-rule rate.
double golden_rule_rate(const Reservoir& reservoir, const EmitterSpec& emitter);

// Γ₀ ≃ 2πλω₀(ω₀/ω_X)^(η-1), the broadband approximation that drops F_X(ω₀).
double golden_rule_rate_approx(const BroadbandReservoir& reservoir, const EmitterSpec& emitter);

// A = ∫₀^∞ R(ω) dω, the slope of the short-time law Γ(t) ≃ A t.
// Closed form for exponential cutoffs and narrowband; adaptive quadrature for
// power-Lorentz cutoffs (throws std::runtime_error if that fails to converge).
double zeno_slope(const Reservoir& reservoir);

// C = (1/ω_X) ∫₀^∞ F_X(ω) dω.
double cutoff_constant(const CutoffKind& cutoff);

}  // namespace fgr

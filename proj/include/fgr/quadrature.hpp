// quadrature.hpp: numerical evaluation of the generalised decay rate
//
//   Γ(t) = 2π ∫₀^∞ dω F_t(ω-ω₀) R(ω) = t ∫₀^∞ dω sinc²((ω-ω₀)t/2) R(ω)
//
// Two independent schemes are provided. decay_rate_numeric() is the production
// path: Gauss–Legendre panels aligned to the zeros of F_t within ±5000 zeros of
// ω₀, log-spaced panels beyond that where the kernel is split as
// 2(1-cos δt)/(δ²t) and the cosine part is integrated by a Filon–Legendre rule,
// then bisection-adaptive refinement. decay_rate_numeric_oracle() integrates the
// same truncated integral with tanh-sinh on chunks that ignore the kernel zeros,
// and exists to cross-check the production path.

#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>

#include "fgr/rate_curve.hpp"
#include "fgr/reservoir.hpp"

namespace fgr {

struct QuadratureConfig {
    double rel_tol{1e-8};
    double abs_tol{0.0};
    std::size_t max_panels{200'000};
    std::size_t nodes_per_panel{16};
    double tail_epsilon{1e-12};

    // Throws std::invalid_argument on a violated invariant.
    void validate() const;
    friend bool operator==(const QuadratureConfig&, const QuadratureConfig&) = default;
};

struct IntegrationResult {
    double value{0.0};
    double error_estimate{0.0};
    std::size_t panels_used{0};
    double truncation_frequency{0.0};
};

// Requested tolerance not reached; carries the best available estimate.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, IntegrationResult best)
        : std::runtime_error(what), best_(best) {}
    const IntegrationResult& best() const noexcept { return best_; }

private:
    IntegrationResult best_;
};

// Upper integration limit ω_max such that the neglected tail is below
// tail_epsilon relative to Γ(t) (broadband: a priori cutoff-function bounds,
// capped at 10³ω_X; narrowband: solved from a Lorentzian tail bound).
double truncation_frequency(const Reservoir& reservoir, const EmitterSpec& emitter, double t, double tail_epsilon);

// Rigorous upper bound on t ∫_{ω_max}^∞ sinc²((ω-ω₀)t/2) R(ω) dω.
double truncation_tail_bound(const Reservoir& reservoir, const EmitterSpec& emitter, double t, double omega_max);

IntegrationResult decay_rate_numeric(const Reservoir& reservoir, const EmitterSpec& emitter, double t,
                                     const QuadratureConfig& cfg = {});

IntegrationResult decay_rate_numeric_oracle(const Reservoir& reservoir, const EmitterSpec& emitter, double t,
                                            const QuadratureConfig& cfg = {});

// "cutoff"/"intermediate"/"resonant" (broadband), "unclassified" when the
// broadband regimes are ill-posed, "zeno"/"transition"/"fermi" (narrowband, by κt).
std::string regime_label(const Reservoir& reservoir, const EmitterSpec& emitter, double t);

// Γ(t)/Γ₀ on the given grid. Points are independent and may be computed on
// `threads` workers (0 = hardware concurrency); results do not depend on it.
// Points that miss their tolerance are kept with their best value and flagged.
RateCurve rate_curve(const Reservoir& reservoir, const EmitterSpec& emitter, std::span<const double> times,
                     const QuadratureConfig& cfg = {}, unsigned threads = 0);

// FGR_THREADS from the environment (0 = auto when unset or unparsable).
unsigned threads_from_env();

}  // namespace fgr

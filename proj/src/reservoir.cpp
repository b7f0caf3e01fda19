#include "fgr/reservoir.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "fgr/errors.hpp"
#include "fgr/numerics.hpp"

namespace fgr {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

bool finite_positive(double x) { return std::isfinite(x) && x > 0.0; }

// ∫₀^∞ x^p (1+x²)^(-μ) dx, split at x = 1 and mapped onto finite intervals.
double power_lorentz_moment(double p, double mu)
{
    constexpr double tol = 1e-13;
    auto inner = [p, mu](double x) { return std::pow(x, p) * std::pow(1.0 + x * x, -mu); };
    // x = 1/s on [1, ∞):  s^(2μ-p-2) (1+s²)^(-μ)
    auto outer = [p, mu](double s) { return std::pow(s, 2.0 * mu - p - 2.0) * std::pow(1.0 + s * s, -mu); };
    const auto lo = numerics::integrate_adaptive(inner, 0.0, 1.0, tol, 0.0, 4000);
    const auto hi = numerics::integrate_adaptive(outer, 0.0, 1.0, tol, 0.0, 4000);
    if (!lo.converged || !hi.converged)
        throw std::runtime_error("power-Lorentz moment quadrature did not converge");
    return lo.value + hi.value;
}

}  // namespace

double cutoff_function(const CutoffKind& cutoff, double x)
{
    return std::visit(overloaded{
                          [x](const Exponential&) { return std::exp(-x); },
                          [x](const PowerLorentz& p) { return std::pow(1.0 + x * x, -p.mu); },
                      },
                      cutoff);
}

std::string describe(const CutoffKind& cutoff)
{
    return std::visit(overloaded{
                          [](const Exponential&) { return std::string("exponential"); },
                          [](const PowerLorentz& p) {
                              std::ostringstream os;
                              os << "power_lorentz(mu=" << p.mu << ")";
                              return os.str();
                          },
                      },
                      cutoff);
}

BroadbandReservoir::BroadbandReservoir(double lambda, double eta, double omega_x, CutoffKind cutoff)
    : lambda_(lambda), eta_(eta), omega_x_(omega_x), cutoff_(cutoff)
{
    if (!finite_positive(lambda_)) throw InvalidModelError("broadband reservoir: lambda must be > 0");
    if (!std::isfinite(eta_) || eta_ < 0.0) throw InvalidModelError("broadband reservoir: eta must be >= 0");
    if (!finite_positive(omega_x_)) throw InvalidModelError("broadband reservoir: omega_x must be > 0");
    if (const auto* p = std::get_if<PowerLorentz>(&cutoff_)) {
        if (!std::isfinite(p->mu) || !(p->mu > 0.5))
            throw InvalidModelError("power-Lorentz cutoff: mu must be > 1/2");
        if (!(2.0 * p->mu > eta_ + 1.0))
            throw InvalidModelError("power-Lorentz cutoff: need 2*mu > eta + 1 for an integrable RSC");
    }
}

double BroadbandReservoir::rsc(double omega) const noexcept
{
    const double x = omega / omega_x_;
    // λω(ω/ω_X)^(η-1) written as λω_X x^η so that ω = 0 is finite for η < 1
    return lambda_ * omega_x_ * std::pow(x, eta_) * cutoff_function(cutoff_, x);
}

std::vector<std::string> BroadbandReservoir::warnings() const
{
    std::vector<std::string> out;
    if (const auto* p = std::get_if<PowerLorentz>(&cutoff_); p && p->mu < 4.0)
        out.emplace_back("power-Lorentz cutoff with mu < 4 is outside the atomic-transition range");
    if (lambda_ >= 0.1) out.emplace_back("lambda >= 0.1: weak-coupling (lambda << 1) assumption is strained");
    return out;
}

NarrowbandReservoir::NarrowbandReservoir(double g, double kappa, double omega_c)
    : g_(g), kappa_(kappa), omega_c_(omega_c)
{
    if (!finite_positive(g_)) throw InvalidModelError("narrowband reservoir: g must be > 0");
    if (!finite_positive(kappa_)) throw InvalidModelError("narrowband reservoir: kappa must be > 0");
    if (!finite_positive(omega_c_)) throw InvalidModelError("narrowband reservoir: omega_c must be > 0");
}

NarrowbandReservoir NarrowbandReservoir::from_quality(double g, double quality, double omega_c)
{
    if (!finite_positive(quality)) throw InvalidModelError("narrowband reservoir: Q must be > 0");
    return {g, omega_c / (2.0 * quality), omega_c};
}

double NarrowbandReservoir::rsc(double omega) const noexcept
{
    const double d = omega - omega_c_;
    return (kappa_ / std::numbers::pi) * g_ * g_ / (d * d + kappa_ * kappa_);
}

EmitterSpec::EmitterSpec(double omega0_) : omega0(omega0_)
{
    if (!finite_positive(omega0)) throw InvalidModelError("emitter: omega0 must be > 0");
}

std::string describe(const Reservoir& reservoir)
{
    std::ostringstream os;
    os.precision(17);
    std::visit(overloaded{
                   [&os](const BroadbandReservoir& r) {
                       os << "broadband(lambda=" << r.lambda() << ", eta=" << r.eta()
                          << ", omega_x=" << r.omega_x() << ", cutoff=" << describe(r.cutoff()) << ")";
                   },
                   [&os](const NarrowbandReservoir& r) {
                       os << "narrowband(g=" << r.g() << ", kappa=" << r.kappa() << ", omega_c=" << r.omega_c()
                          << ", Q=" << r.quality_factor() << ")";
                   },
               },
               reservoir);
    return os.str();
}

std::string describe(const Reservoir& reservoir, const EmitterSpec& emitter)
{
    std::ostringstream os;
    os.precision(17);
    os << describe(reservoir) << "; omega0=" << emitter.omega0;
    return os.str();
}

double evaluate_rsc(const Reservoir& reservoir, double omega)
{
    if (!(omega >= 0.0)) throw DomainError("evaluate_rsc: omega must be >= 0");
    return std::visit([omega](const auto& r) { return r.rsc(omega); }, reservoir);
}

double golden_rule_rate(const Reservoir& reservoir, const EmitterSpec& emitter)
{
    return 2.0 * std::numbers::pi * evaluate_rsc(reservoir, emitter.omega0);
}

double golden_rule_rate_approx(const BroadbandReservoir& reservoir, const EmitterSpec& emitter)
{
    const double w0 = emitter.omega0;
    return 2.0 * std::numbers::pi * reservoir.lambda() * w0 * std::pow(w0 / reservoir.omega_x(), reservoir.eta() - 1.0);
}

double zeno_slope(const Reservoir& reservoir)
{
    return std::visit(
        overloaded{
            [](const BroadbandReservoir& r) {
                const double scale = r.lambda() * r.omega_x() * r.omega_x();
                if (std::holds_alternative<Exponential>(r.cutoff())) return scale * std::tgamma(r.eta() + 1.0);
                return scale * power_lorentz_moment(r.eta(), std::get<PowerLorentz>(r.cutoff()).mu);
            },
            [](const NarrowbandReservoir& r) {
                // Lorentzian mass on [0, ∞)
                return r.g() * r.g() * (0.5 + std::atan(r.omega_c() / r.kappa()) / std::numbers::pi);
            },
        },
        reservoir);
}

double cutoff_constant(const CutoffKind& cutoff)
{
    return std::visit(overloaded{
                          [](const Exponential&) { return 1.0; },
                          [](const PowerLorentz& p) {
                              if (!(p.mu > 0.5)) throw InvalidModelError("power-Lorentz cutoff: mu must be > 1/2");
                              return power_lorentz_moment(0.0, p.mu);
                          },
                      },
                      cutoff);
}

}  // namespace fgr

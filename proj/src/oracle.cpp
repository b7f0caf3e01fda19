// Independent cross-check of decay_rate_numeric(): tanh-sinh on chunks laid out
// from ω = 0 without regard to the kernel zeros or the panel plan of the
// production integrator. Slow but structurally unrelated.

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fgr/errors.hpp"
#include "fgr/kernel.hpp"
#include "fgr/numerics.hpp"
#include "fgr/quadrature.hpp"

namespace fgr {

namespace {

double feature_scale(const BroadbandReservoir& r, double) { return 0.25 * r.omega_x(); }

double feature_scale(const NarrowbandReservoir& r, double w)
{
    return 0.5 * std::max(r.kappa(), std::abs(w - r.omega_c()));
}

template <class Model>
IntegrationResult oracle_for(const Model& model, const Reservoir& reservoir, const EmitterSpec& emitter, double t,
                             const QuadratureConfig& cfg)
{
    const double omega0 = emitter.omega0;
    const double omega_max = truncation_frequency(reservoir, emitter, t, cfg.tail_epsilon);
    const double tail = truncation_tail_bound(reservoir, emitter, t, omega_max);
    const double period_span = 4.0 * 2.0 * std::numbers::pi / t;
    const double chunk_tol = std::max(0.1 * cfg.rel_tol, 1e-14);
    const std::size_t chunk_cap = cfg.max_panels;

    auto f = [&](double w) {
        const double s = sinc(0.5 * (w - omega0) * t);
        return t * s * s * model.rsc(w);
    };

    boost::math::quadrature::tanh_sinh<double> integrator;
    numerics::CompensatedSum value;
    numerics::CompensatedSum error;
    std::size_t chunks = 0;
    double a = 0.0;
    while (a < omega_max) {
        const double b = std::min(omega_max, a + std::min(period_span, feature_scale(model, a)));
        double err = 0.0;
        double l1 = 0.0;
        value.add(integrator.integrate(f, a, b, chunk_tol, &err, &l1));
        error.add(err * l1);
        a = b;
        if (++chunks > chunk_cap) {
            IntegrationResult partial{value.value(), std::numeric_limits<double>::infinity(), chunks, omega_max};
            throw ConvergenceError("decay_rate_numeric_oracle: chunk budget exhausted", partial);
        }
    }

    IntegrationResult result{std::max(0.0, value.value()), error.value() + tail, chunks, omega_max};
    if (!(result.error_estimate <= std::max(cfg.abs_tol, cfg.rel_tol * result.value)))
        throw ConvergenceError("decay_rate_numeric_oracle: tolerance not reached", result);
    return result;
}

}  // namespace

IntegrationResult decay_rate_numeric_oracle(const Reservoir& reservoir, const EmitterSpec& emitter, double t,
                                            const QuadratureConfig& cfg)
{
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("decay_rate_numeric_oracle: t must be finite and > 0");
    cfg.validate();
    return std::visit([&](const auto& r) { return oracle_for(r, reservoir, emitter, t, cfg); }, reservoir);
}

}  // namespace fgr

#include "fgr/quadrature.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <limits>
#include <numbers>
#include <queue>
#include <thread>
#include <utility>
#include <vector>

#include "fgr/analytic.hpp"
#include "fgr/errors.hpp"
#include "fgr/kernel.hpp"
#include "fgr/numerics.hpp"

namespace fgr {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNearZeros = 5000.0;       // half-width of the zero-aligned window, in kernel zeros
constexpr double kPanelsPerDecade = 8.0;    // far-field seeds in |ω-ω₀|
constexpr std::size_t kRecomputeEvery = 4096;

using numerics::CompensatedSum;
using numerics::GaussLegendre;

void require_positive_time(double t, const char* what)
{
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError(std::string(what) + ": t must be finite and > 0");
}

// ∫_W^∞ R(ω) dω, bounded from above.
double rsc_tail_mass(const BroadbandReservoir& r, double w)
{
    const double y = w / r.omega_x();
    const double eta = r.eta();
    const double scale = r.lambda() * r.omega_x() * r.omega_x();
    if (const auto* pl = std::get_if<PowerLorentz>(&r.cutoff())) {
        // (1+y²)^{-μ} <= y^{-2μ}
        const double p = 2.0 * pl->mu - eta - 1.0;
        return scale * std::pow(y, -p) / p;
    }
    // ∫_y^∞ x^η e^{-x} dx <= y^η e^{-y} / (1 - η/y) for y > η
    if (y > eta + 1.0) return scale * std::pow(y, eta) * std::exp(-y) / (1.0 - eta / y);
    return scale * std::tgamma(eta + 1.0);
}

double rsc_tail_mass(const NarrowbandReservoir& r, double w)
{
    const double d = w - r.omega_c();
    if (!(d > 0.0)) return r.g() * r.g();
    return r.g() * r.g() * r.kappa() / (kPi * d);
}

// t·sinc²(δt/2) <= min(t, 4/(tδ²)) for |δ| >= d
double kernel_envelope(double t, double d)
{
    if (!(d > 0.0)) return t;
    return std::min(t, 4.0 / (t * d * d));
}

// Lower bound on Γ(t) from the central lobe, where t·sinc² >= (4/π²)t.
double central_lobe_bound(const NarrowbandReservoir& r, double omega0, double t)
{
    const double lo = std::max(0.0, omega0 - kPi / t);
    const double hi = omega0 + kPi / t;
    const double mass = r.g() * r.g() / kPi *
                        (std::atan((hi - r.omega_c()) / r.kappa()) - std::atan((lo - r.omega_c()) / r.kappa()));
    return 4.0 / (kPi * kPi) * t * mass;
}

double truncation_for(const BroadbandReservoir& r, double omega0, double, double eps)
{
    double y = 0.0;
    if (const auto* pl = std::get_if<PowerLorentz>(&r.cutoff())) {
        const double expo = 1.0 - 2.0 * pl->mu + r.eta();
        y = std::min(std::pow(eps, 1.0 / expo), 1e3);
    } else {
        y = std::log(1.0 / eps) + 10.0;
    }
    return std::max(y * r.omega_x(), 2.0 * omega0);
}

double truncation_for(const NarrowbandReservoir& r, double omega0, double t, double eps)
{
    const double target = eps * central_lobe_bound(r, omega0, t);
    const double base = std::max(r.omega_c(), omega0);
    double w = base + r.kappa();
    for (int j = 0; j < 1000; ++j) {
        w = base + r.kappa() * std::ldexp(1.0, j);
        if (rsc_tail_mass(r, w) * kernel_envelope(t, w - omega0) <= target) break;
    }
    return std::max(w, 2.0 * omega0);
}

struct Panel {
    double a;
    double b;
    double value;
    double error;
};

// Evaluates one panel of t∫sinc²((ω-ω₀)t/2)R(ω)dω. Panels far from ω₀ and wide
// compared with the kernel period use the split form
//   (2/t)[∫R/δ² - ∫(R/δ²)cos(δt)]
// with the cosine part done by Filon–Legendre: expanding g = R/δ² in Legendre
// polynomials on the panel gives ∫P_k(x)e^{iθx}dx = 2i^k j_k(θ).
template <class Model>
class PanelRule {
public:
    PanelRule(const Model& model, double omega0, double t, std::size_t n, double near_lo, double near_hi)
        : model_(model), omega0_(omega0), t_(t), fine_(n), coarse_(std::max<std::size_t>(n / 2, 1)), near_lo_(near_lo), near_hi_(near_hi),
          g_(n), bessel_(n)
    {
    }

    Panel operator()(double a, double b)
    {
        const double h = 0.5 * (b - a);
        const bool far = a >= near_hi_ || b <= near_lo_;
        if (far && h * t_ >= 2.0 * static_cast<double>(fine_.size())) return split(a, b);
        return direct(a, b);
    }

private:
    double direct_integrand(double w) const
    {
        const double s = sinc(0.5 * (w - omega0_) * t_);
        return t_ * s * s * model_.rsc(w);
    }

    // Below 4 nodes the n/2 rule is too crude to estimate anything, so the
    // panel is compared with the same rule on its two halves instead.
    template <class Rule>
    Panel estimate(Rule&& rule, double a, double b)
    {
        const double v = rule(fine_, a, b);
        if (fine_.size() >= 4) return {a, b, v, std::abs(v - rule(coarse_, a, b))};
        const double m = 0.5 * (a + b);
        const double halves = rule(fine_, a, m) + rule(fine_, m, b);
        return {a, b, halves, std::abs(halves - v)};
    }

    Panel direct(double a, double b)
    {
        const auto f = [this](double w) { return direct_integrand(w); };
        return estimate([&f](const GaussLegendre& rule, double lo, double hi) { return rule.integrate(f, lo, hi); },
                        a, b);
    }

    // Smooth and oscillatory parts with the given rule.
    double split_rule(const GaussLegendre& rule, double a, double b)
    {
        const std::size_t n = rule.size();
        const double m = 0.5 * (a + b);
        const double h = 0.5 * (b - a);
        double smooth = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double w = m + h * rule.nodes()[i];
            const double d = w - omega0_;
            g_[i] = model_.rsc(w) / (d * d);
            smooth += rule.weights()[i] * g_[i];
        }
        const double theta = h * t_;
        const double phi = (m - omega0_) * t_;
        bessel_.resize(n);
        numerics::spherical_bessel_upward(theta, bessel_);
        const double c = std::cos(phi);
        const double s = std::sin(phi);
        // cos(φ + kπ/2) cycles through c, -s, -c, s
        const double phase[4] = {c, -s, -c, s};
        double osc = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            double proj = 0.0;
            for (std::size_t i = 0; i < n; ++i) proj += rule.weights()[i] * g_[i] * rule.legendre(k, i);
            const double coeff = 0.5 * (2.0 * static_cast<double>(k) + 1.0) * proj;
            osc += coeff * 2.0 * bessel_[k] * phase[k % 4];
        }
        return 2.0 / t_ * h * (smooth - osc);
    }

    Panel split(double a, double b)
    {
        return estimate([this](const GaussLegendre& rule, double lo, double hi) { return split_rule(rule, lo, hi); },
                        a, b);
    }

    const Model& model_;
    double omega0_;
    double t_;
    GaussLegendre fine_;
    GaussLegendre coarse_;
    double near_lo_;
    double near_hi_;
    std::vector<double> g_;
    std::vector<double> bessel_;
};

void add_model_seeds(const BroadbandReservoir& r, double omega0, double omega_max, std::vector<double>& seeds)
{
    // geometric in ω: resolves ω^η at the origin and the cutoff scale
    const double start = std::min(omega0, r.omega_x());
    for (int j = 0; j <= 40; ++j) seeds.push_back(std::ldexp(start, -j));
    for (double w = start * std::numbers::sqrt2; w < omega_max; w *= std::numbers::sqrt2) seeds.push_back(w);
}

void add_model_seeds(const NarrowbandReservoir& r, double, double omega_max, std::vector<double>& seeds)
{
    seeds.push_back(r.omega_c());
    for (int j = -4;; ++j) {
        const double d = r.kappa() * std::pow(std::numbers::sqrt2, j);
        const double lo = r.omega_c() - d;
        const double hi = r.omega_c() + d;
        if (lo > 0.0) seeds.push_back(lo);
        if (hi < omega_max) seeds.push_back(hi);
        if (lo <= 0.0 && hi >= omega_max) break;
    }
}

template <class Model>
IntegrationResult integrate_primary(const Model& model, const Reservoir& reservoir, const EmitterSpec& emitter,
                                    double t, const QuadratureConfig& cfg)
{
    const double omega0 = emitter.omega0;
    const double omega_max = truncation_frequency(reservoir, emitter, t, cfg.tail_epsilon);
    const double tail = truncation_tail_bound(reservoir, emitter, t, omega_max);

    const double zeros_wanted = std::min(kNearZeros, std::max(1.0, static_cast<double>(cfg.max_panels / 4)));
    const double half_window = zeros_wanted * 2.0 * kPi / t;
    const double near_lo = std::max(0.0, omega0 - half_window);
    const double near_hi = std::min(omega_max, omega0 + half_window);

    std::vector<double> seeds{omega0};
    const double spacing = 2.0 * kPi / t;
    for (double k = 1.0; k <= zeros_wanted; k += 1.0) {
        seeds.push_back(omega0 + k * spacing);
        seeds.push_back(omega0 - k * spacing);
    }
    seeds.push_back(0.0);
    seeds.push_back(omega_max);
    seeds.push_back(near_lo);
    seeds.push_back(near_hi);
    const double ratio = std::pow(10.0, 1.0 / kPanelsPerDecade);
    for (double d = half_window * ratio; omega0 + d < omega_max; d *= ratio) seeds.push_back(omega0 + d);
    for (double d = half_window * ratio; omega0 - d > 0.0; d *= ratio) seeds.push_back(omega0 - d);
    add_model_seeds(model, omega0, omega_max, seeds);

    std::erase_if(seeds, [&](double w) { return !(w >= 0.0 && w <= omega_max); });  // also drops zeros past the window edges
    std::sort(seeds.begin(), seeds.end());
    seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());

    PanelRule<Model> rule(model, omega0, t, cfg.nodes_per_panel, near_lo, near_hi);
    std::vector<Panel> panels;
    panels.reserve(seeds.size() * 2);
    for (std::size_t i = 0; i + 1 < seeds.size(); ++i) panels.push_back(rule(seeds[i], seeds[i + 1]));

    using Entry = std::pair<double, std::size_t>;
    std::priority_queue<Entry> heap;
    for (std::size_t i = 0; i < panels.size(); ++i) heap.emplace(panels[i].error, i);

    // Running totals drift under add/subtract; rebuild them exactly now and then.
    double unsplittable = 0.0;
    auto exact_totals = [&]() {
        CompensatedSum v, e;
        for (const auto& p : panels) {
            v.add(p.value);
            e.add(p.error);
        }
        return std::pair{v.value(), e.value() + unsplittable};
    };
    auto [value, error] = exact_totals();
    auto target = [&]() { return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value)); };

    std::size_t splits = 0;
    while (error + tail > target() && panels.size() < cfg.max_panels && !heap.empty()) {
        const auto [err, idx] = heap.top();
        heap.pop();
        const Panel worst = panels[idx];
        if (err == 0.0) break;
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            unsplittable += worst.error;
            panels[idx].error = 0.0;
            continue;
        }
        const Panel left = rule(worst.a, mid);
        const Panel right = rule(mid, worst.b);
        panels[idx] = left;
        panels.push_back(right);
        heap.emplace(left.error, idx);
        heap.emplace(right.error, panels.size() - 1);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        if (++splits % kRecomputeEvery == 0) std::tie(value, error) = exact_totals();
    }
    std::tie(value, error) = exact_totals();

    // accumulated rounding of the panel sum
    const double rounding = 4.0 * std::numeric_limits<double>::epsilon() * std::abs(value);
    IntegrationResult result{std::max(0.0, value), error + tail + rounding, panels.size(), omega_max};
    if (!(result.error_estimate <= target()))
        throw ConvergenceError("decay_rate_numeric: tolerance not reached within max_panels", result);
    return result;
}

}  // namespace

void QuadratureConfig::validate() const
{
    if (!(rel_tol >= 0.0) || !(rel_tol < 1.0)) throw std::invalid_argument("quadrature: rel_tol must be in [0, 1)");
    if (!(abs_tol >= 0.0) || !std::isfinite(abs_tol)) throw std::invalid_argument("quadrature: abs_tol must be >= 0");
    if (!(rel_tol > 0.0 || abs_tol > 0.0)) throw std::invalid_argument("quadrature: rel_tol or abs_tol must be > 0");
    if (max_panels < 1) throw std::invalid_argument("quadrature: max_panels must be >= 1");
    if (nodes_per_panel < 2 || nodes_per_panel > 128)
        throw std::invalid_argument("quadrature: nodes_per_panel must be in [2, 128]");
    if (!(tail_epsilon > 0.0) || !(tail_epsilon < 1.0))
        throw std::invalid_argument("quadrature: tail_epsilon must be in (0, 1)");
}

double truncation_frequency(const Reservoir& reservoir, const EmitterSpec& emitter, double t, double tail_epsilon)
{
    require_positive_time(t, "truncation_frequency");
    if (!(tail_epsilon > 0.0 && tail_epsilon < 1.0))
        throw std::invalid_argument("truncation_frequency: tail_epsilon must be in (0, 1)");
    return std::visit([&](const auto& r) { return truncation_for(r, emitter.omega0, t, tail_epsilon); }, reservoir);
}

double truncation_tail_bound(const Reservoir& reservoir, const EmitterSpec& emitter, double t, double omega_max)
{
    require_positive_time(t, "truncation_tail_bound");
    const double mass = std::visit([&](const auto& r) { return rsc_tail_mass(r, omega_max); }, reservoir);
    return mass * kernel_envelope(t, omega_max - emitter.omega0);
}

IntegrationResult decay_rate_numeric(const Reservoir& reservoir, const EmitterSpec& emitter, double t,
                                     const QuadratureConfig& cfg)
{
    require_positive_time(t, "decay_rate_numeric");
    cfg.validate();
    return std::visit([&](const auto& r) { return integrate_primary(r, reservoir, emitter, t, cfg); }, reservoir);
}

std::string regime_label(const Reservoir& reservoir, const EmitterSpec& emitter, double t)
{
    if (const auto* nb = std::get_if<NarrowbandReservoir>(&reservoir)) {
        const double x = nb->kappa() * t;
        if (x < 0.1) return "zeno";
        if (x > 10.0) return "fermi";
        return "transition";
    }
    try {
        return to_string(classify_regime(std::get<BroadbandReservoir>(reservoir), emitter, t));
    } catch (const IllPosedError&) {
        return "unclassified";
    }
}

RateCurve rate_curve(const Reservoir& reservoir, const EmitterSpec& emitter, std::span<const double> times,
                     const QuadratureConfig& cfg, unsigned threads)
{
    cfg.validate();
    if (times.empty()) throw CurveError("rate_curve: empty time grid");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!(times[i] > 0.0) || !std::isfinite(times[i])) throw DomainError("rate_curve: times must be finite and > 0");
        if (i > 0 && !(times[i] > times[i - 1])) throw CurveError("rate_curve: times must be strictly increasing");
    }

    const double gamma0 = golden_rule_rate(reservoir, emitter);
    if (!(gamma0 > 0.0)) throw DomainError("rate_curve: golden-rule rate vanishes at omega0");

    const std::size_t n = times.size();
    RateCurve curve;
    curve.times.assign(times.begin(), times.end());
    curve.ratios.assign(n, 0.0);
    curve.error_estimates.assign(n, 0.0);
    curve.regime_labels.assign(n, std::string{});
    std::vector<char> flags(n, 0);

    curve.metadata.gamma0 = gamma0;
    curve.metadata.rel_tol = cfg.rel_tol;
    curve.metadata.abs_tol = cfg.abs_tol;
    curve.metadata.description = describe(reservoir, emitter);
    if (const auto* nb = std::get_if<NarrowbandReservoir>(&reservoir)) {
        curve.metadata.time_scale = 1.0 / nb->kappa();
        curve.metadata.dimensionless_time = "kappa_t";
    } else {
        curve.metadata.time_scale = 1.0 / emitter.omega0;
        curve.metadata.dimensionless_time = "omega0_t";
    }

    auto compute = [&](std::size_t i) {
        IntegrationResult r;
        try {
            r = decay_rate_numeric(reservoir, emitter, times[i], cfg);
        } catch (const ConvergenceError& e) {
            r = e.best();
            flags[i] = 1;
        }
        curve.ratios[i] = r.value / gamma0;
        curve.error_estimates[i] = r.error_estimate / gamma0;
        curve.regime_labels[i] = regime_label(reservoir, emitter, times[i]);
    };

    unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) compute(i);
    } else {
        std::vector<std::exception_ptr> failures(workers);
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w]() {
                try {
                    for (std::size_t i = w; i < n; i += workers) compute(i);
                } catch (...) {
                    failures[w] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        for (const auto& f : failures)
            if (f) std::rethrow_exception(f);
    }
    curve.flagged.assign(flags.begin(), flags.end());
    return curve;
}

unsigned threads_from_env()
{
    const char* raw = std::getenv("FGR_THREADS");
    if (raw == nullptr) return 0;
    unsigned value = 0;
    const char* end = raw + std::strlen(raw);
    const auto [ptr, ec] = std::from_chars(raw, end, value);
    if (ec != std::errc{} || ptr != end) return 0;
    return value;
}

}  // namespace fgr

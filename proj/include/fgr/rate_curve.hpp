// rate_curve.hpp: sampled t ↦ Γ(t)/Γ₀

#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace fgr {

struct CurveMetadata {
    std::string description;            // reservoir + emitter
    double time_scale{1.0};             // 1/ω₀ (broadband) or 1/κ (narrowband)
    std::string dimensionless_time{"omega0_t"};
    double gamma0{0.0};                 // exact golden-rule rate used for the ratios
    double rel_tol{0.0};                // quadrature tolerances (0 for closed-form curves)
    double abs_tol{0.0};
};

struct RateCurve {
    std::vector<double> times;
    std::vector<double> ratios;
    std::vector<double> error_estimates;  // absolute, on the ratio
    std::vector<std::string> regime_labels;
    std::vector<bool> flagged;            // point did not meet its tolerance
    CurveMetadata metadata;

    std::size_t size() const noexcept { return times.size(); }
    bool any_flagged() const noexcept;

    // Throws CurveError unless times are strictly increasing and positive, all
    // ratios are >= 0 and all per-point vectors have equal length.
    void validate() const;
};

// n points from t_min to t_max inclusive, log-uniform, ceil(points_per_decade·decades) intervals.
std::vector<double> log_time_grid(double t_min, double t_max, double points_per_decade);

}  // namespace fgr

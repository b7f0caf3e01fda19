#include "fgr/rate_curve.hpp"

#include <algorithm>
#include <cmath>

#include "fgr/errors.hpp"

namespace fgr {

bool RateCurve::any_flagged() const noexcept
{
    return std::any_of(flagged.begin(), flagged.end(), [](bool f) { return f; });
}

void RateCurve::validate() const
{
    const std::size_t n = times.size();
    if (ratios.size() != n || error_estimates.size() != n || regime_labels.size() != n || flagged.size() != n)
        throw CurveError("rate curve: per-point vectors differ in length");
    for (std::size_t i = 0; i < n; ++i) {
        if (!(times[i] > 0.0)) throw CurveError("rate curve: times must be > 0");
        if (i > 0 && !(times[i] > times[i - 1])) throw CurveError("rate curve: times must be strictly increasing");
        if (!(ratios[i] >= 0.0)) throw CurveError("rate curve: ratios must be >= 0");
    }
}

std::vector<double> log_time_grid(double t_min, double t_max, double points_per_decade)
{
    if (!(t_min > 0.0) || !(t_max > t_min)) throw DomainError("log_time_grid: need 0 < t_min < t_max");
    if (!(points_per_decade >= 1.0)) throw DomainError("log_time_grid: points_per_decade must be >= 1");
    const double decades = std::log10(t_max / t_min);
    const auto intervals = static_cast<std::size_t>(std::max(1.0, std::ceil(points_per_decade * decades - 1e-9)));
    std::vector<double> out(intervals + 1);
    const double log_lo = std::log10(t_min);
    for (std::size_t i = 0; i <= intervals; ++i)
        out[i] = std::pow(10.0, log_lo + decades * static_cast<double>(i) / static_cast<double>(intervals));
    out.front() = t_min;
    out.back() = t_max;
    return out;
}

}  // namespace fgr

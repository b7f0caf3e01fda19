#include "fgr/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fgr/errors.hpp"

namespace fgr {

double sinc(double x) noexcept
{
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

double spectral_profile(double detuning, double t)
{
    if (!(t > 0.0)) throw DomainError("spectral_profile: t must be > 0");
    const double s = sinc(0.5 * detuning * t);
    return t / (2.0 * std::numbers::pi) * s * s;
}

std::vector<double> kernel_zeros(double t, double omega0, double omega_max, std::size_t cap)
{
    if (!(t > 0.0)) throw DomainError("kernel_zeros: t must be > 0");
    if (!(omega_max > 0.0)) throw DomainError("kernel_zeros: omega_max must be > 0");

    const double spacing = 2.0 * std::numbers::pi / t;
    // lower branch ω₀ - k·spacing for k in [k_lo, k_hi], upper branch ω₀ + k·spacing for k in [1, k_up]
    const double k_lo = std::max(1.0, std::ceil((omega0 - omega_max) / spacing));
    const double k_hi = std::floor(omega0 / spacing) + 1.0;  // one extra candidate, filtered below
    const double k_up = omega_max > omega0 ? std::floor((omega_max - omega0) / spacing) + 1.0 : 0.0;
    const double count = std::max(0.0, k_hi - k_lo + 1.0) + k_up + 1.0;
    if (count > static_cast<double>(cap)) throw ResourceError("kernel_zeros: zero count exceeds cap");

    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    auto keep = [&](double w) {
        if (w >= 0.0 && w <= omega_max && (out.empty() || w > out.back())) out.push_back(w);
    };
    for (double k = k_hi; k >= k_lo; k -= 1.0) keep(omega0 - k * spacing);
    keep(omega0);
    for (double k = 1.0; k <= k_up; k += 1.0) keep(omega0 + k * spacing);
    return out;
}

}  // namespace fgr

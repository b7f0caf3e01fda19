// helpers shared by the unit and acceptance tests
#pragma once

#include <cmath>
#include <numbers>

#include "fgr/kernel.hpp"
#include "fgr/numerics.hpp"

namespace fgr::testing {

// ∫F_t(δ)dδ over the real line: zero-aligned GL panels on |δ| < 2πK/t plus the
// averaged tail (1/π)∫_{Kπ}^∞ sin²x/x² dx ≈ 1/(2Kπ²) on each side.
inline double kernel_mass(double t, int zeros = 20000)
{
    const numerics::GaussLegendre rule(16);
    const double step = 2.0 * std::numbers::pi / t;
    numerics::CompensatedSum half;
    for (int k = 0; k < zeros; ++k)
        half.add(rule.integrate([t](double d) { return spectral_profile(d, t); }, k * step, (k + 1) * step));
    const double x = zeros * std::numbers::pi;
    half.add(1.0 / (2.0 * x * std::numbers::pi));
    return 2.0 * half.value();
}

}  // namespace fgr::testing

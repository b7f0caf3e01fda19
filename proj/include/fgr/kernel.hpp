// kernel.hpp: the time-dependent spectral profile of the two-level system
//
//   F_t(δ) = (t/2π) sinc²(δt/2),   δ = ω - ω₀
//
// F_t has unit mass on the real line and tends to δ(ω-ω₀) as t → ∞.

#pragma once

#include <cstddef>
#include <vector>

namespace fgr {

// sin(x)/x with sinc(0) = 1; series branch for |x| < 1e-4.
double sinc(double x) noexcept;

struct ProfilePoint {
    double detuning;
    double time;
    double value;
};

// (t/2π) sinc²(δt/2); throws DomainError for t <= 0.
double spectral_profile(double detuning, double t);

inline constexpr std::size_t kDefaultZeroCap = 1'000'000;

// Panel boundaries for the decay-rate integrators: all ω ∈ [0, omega_max] of
// the form ω₀ ± 2πk/t (k >= 1), plus ω₀ itself when it lies in range,
// strictly increasing. Throws ResourceError if more than `cap` points.
std::vector<double> kernel_zeros(double t, double omega0, double omega_max, std::size_t cap = kDefaultZeroCap);

}  // namespace fgr

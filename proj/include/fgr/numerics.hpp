// numerics.hpp: small numerical building blocks: Gauss–Legendre rules,
// compensated summation and a bisection-adaptive panel integrator.

#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace fgr::numerics {

// Neumaier variant of Kahan summation.
class CompensatedSum {
public:
    void add(double x) noexcept;
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_{0.0};
    double comp_{0.0};
};

// n-point Gauss–Legendre rule on [-1, 1], with the Legendre polynomials
// P_0..P_{n-1} tabulated at the nodes (used for Legendre expansions).
class GaussLegendre {
public:
    explicit GaussLegendre(std::size_t n);

    std::size_t size() const noexcept { return nodes_.size(); }
    const std::vector<double>& nodes() const noexcept { return nodes_; }
    const std::vector<double>& weights() const noexcept { return weights_; }
    // P_k(x_i), stored row-major as legendre(k, i)
    double legendre(std::size_t k, std::size_t i) const noexcept { return legendre_[k * size() + i]; }

    template <class F>
    double integrate(F&& f, double a, double b) const
    {
        const double m = 0.5 * (a + b);
        const double h = 0.5 * (b - a);
        double s = 0.0;
        for (std::size_t i = 0; i < nodes_.size(); ++i) s += weights_[i] * f(m + h * nodes_[i]);
        return h * s;
    }

private:
    std::vector<double> nodes_;
    std::vector<double> weights_;
    std::vector<double> legendre_;
};

// Spherical Bessel functions j_0..j_{n-1}(x) by upward recurrence.
// Only accurate for x well above n; callers guarantee x >= 2n.
void spherical_bessel_upward(double x, std::vector<double>& out);

struct AdaptiveResult {
    double value{0.0};
    double error_estimate{0.0};
    std::size_t panels{0};
    bool converged{false};
};

// Bisection-adaptive composite Gauss–Legendre on [a, b] with the error of each
// panel estimated by comparing n- and n/2-point rules. Handles integrable
// endpoint singularities through repeated bisection.
AdaptiveResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                  double rel_tol, double abs_tol = 0.0,
                                  std::size_t max_panels = 20000, std::size_t nodes = 16);

}  // namespace fgr::numerics

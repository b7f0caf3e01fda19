#include "fgr/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <stdexcept>
#include <tuple>
#include <utility>

namespace fgr::numerics {

void CompensatedSum::add(double x) noexcept
{
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
        comp_ += (sum_ - t) + x;
    else
        comp_ += (x - t) + sum_;
    sum_ = t;
}

GaussLegendre::GaussLegendre(std::size_t n)
{
    if (n < 1) throw std::invalid_argument("GaussLegendre: need at least one node");
    nodes_.resize(n);
    weights_.resize(n);

    // Newton iteration on P_n from the Chebyshev-like initial guess; symmetric pairs.
    const std::size_t half = (n + 1) / 2;
    for (std::size_t i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            if (n == 1) p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
                p0 = p1;
                p1 = pk;
            }
            // p1 = P_n(x), p0 = P_{n-1}(x)
            dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // recompute derivative at the converged node
        double p0 = 1.0, p1 = x;
        for (std::size_t k = 2; k <= n; ++k) {
            const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
            p0 = p1;
            p1 = pk;
        }
        dp = (n == 1) ? 1.0 : static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes_[i] = -x;
        nodes_[n - 1 - i] = x;
        weights_[i] = w;
        weights_[n - 1 - i] = w;
    }
    if (n % 2 == 1) nodes_[n / 2] = 0.0;

    legendre_.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = nodes_[i];
        double p0 = 1.0, p1 = x;
        legendre_[i] = 1.0;
        if (n > 1) legendre_[n + i] = x;
        for (std::size_t k = 2; k < n; ++k) {
            const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
            legendre_[k * n + i] = pk;
            p0 = p1;
            p1 = pk;
        }
    }
}

void spherical_bessel_upward(double x, std::vector<double>& out)
{
    if (out.empty()) return;
    const double s = std::sin(x);
    const double c = std::cos(x);
    out[0] = s / x;
    if (out.size() == 1) return;
    out[1] = s / (x * x) - c / x;
    for (std::size_t k = 1; k + 1 < out.size(); ++k)
        out[k + 1] = (2.0 * static_cast<double>(k) + 1.0) / x * out[k] - out[k - 1];
}

namespace {

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

}  // namespace

AdaptiveResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                  double rel_tol, double abs_tol, std::size_t max_panels,
                                  std::size_t nodes)
{
    if (!(b > a)) return {0.0, 0.0, 0, true};
    const GaussLegendre fine(nodes);
    const GaussLegendre coarse(nodes / 2 < 1 ? 1 : nodes / 2);

    auto eval = [&](double lo, double hi) {
        const double v = fine.integrate(f, lo, hi);
        const double w = coarse.integrate(f, lo, hi);
        return Panel{lo, hi, v, std::abs(v - w)};
    };

    std::priority_queue<Panel> heap;
    heap.push(eval(a, b));
    std::size_t count = 1;

    // Running totals drift under repeated add/subtract, so they are rebuilt
    // exactly from the heap every so often and before returning.
    auto exact_totals = [&heap]() {
        auto copy = heap;
        CompensatedSum v, e;
        for (; !copy.empty(); copy.pop()) {
            v.add(copy.top().value);
            e.add(copy.top().error);
        }
        return std::pair{v.value(), e.value()};
    };

    double value = heap.top().value;
    double error = heap.top().error;
    double unsplittable_error = 0.0;
    auto target = [&]() { return std::max(abs_tol, rel_tol * std::abs(value)); };
    while (error > target() && count < max_panels) {
        const Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            // cannot split further in double precision
            heap.push(Panel{worst.a, worst.b, worst.value, 0.0});
            unsplittable_error += worst.error;
            if (heap.top().error == 0.0) break;
            continue;
        }
        const Panel left = eval(worst.a, mid);
        const Panel right = eval(mid, worst.b);
        heap.push(left);
        heap.push(right);
        ++count;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        if (count % 256 == 0) {
            std::tie(value, error) = exact_totals();
            error += unsplittable_error;
        }
    }
    std::tie(value, error) = exact_totals();
    error += unsplittable_error;
    return {value, error, count, error <= target()};
}

}  // namespace fgr::numerics

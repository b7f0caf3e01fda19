#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fgr/errors.hpp"
#include "fgr/reservoir.hpp"

using namespace fgr;

namespace {

constexpr double kPi = std::numbers::pi;

// plain trapezoid on [0, 60 ω_X]
double trapezoid_mass(const BroadbandReservoir& r, std::size_t n)
{
    const double b = 60.0 * r.omega_x();
    const double h = b / static_cast<double>(n);
    double s = 0.5 * (r.rsc(0.0) + r.rsc(b));
    for (std::size_t i = 1; i < n; ++i) s += r.rsc(h * static_cast<double>(i));
    return s * h;
}

}  // namespace

TEST_SUITE("reservoir")
{
    TEST_CASE("rsc reference values")
    {
        const NarrowbandReservoir nb(0.3, 0.05, 1.2);
        CHECK(nb.rsc(1.2) == doctest::Approx(0.09 / (kPi * 0.05)).epsilon(1e-15));

        const BroadbandReservoir sub(1e-3, 0.5, 250.0);
        CHECK(evaluate_rsc(sub, 0.0) == 0.0);

        const BroadbandReservoir ohmic(1e-3, 1.0, 250.0);
        CHECK(evaluate_rsc(ohmic, 1.0) == doctest::Approx(1e-3 * std::exp(-1.0 / 250.0)).epsilon(1e-15));
        CHECK(evaluate_rsc(ohmic, 1.0) == doctest::Approx(9.960e-4).epsilon(1e-4));
    }

    TEST_CASE("negative frequency is a domain error")
    {
        CHECK_THROWS_AS(evaluate_rsc(NarrowbandReservoir(1, 1, 1), -1e-300), DomainError);
        CHECK_THROWS_AS(evaluate_rsc(BroadbandReservoir(0.1, 1, 10), -1.0), DomainError);
    }

    TEST_CASE("golden-rule rates")
    {
        const double g = 0.2, kappa = 0.05;
        const NarrowbandReservoir nb(g, kappa, 1.0);
        CHECK(golden_rule_rate(nb, EmitterSpec(1.0)) == doctest::Approx(2 * g * g / kappa).epsilon(1e-14));
        const double delta = 0.13;
        CHECK(golden_rule_rate(nb, EmitterSpec(1.0 + delta)) ==
              doctest::Approx(2 * kappa * g * g / (delta * delta + kappa * kappa)).epsilon(1e-12));

        const EmitterSpec unit(1.0);
        const BroadbandReservoir bb(1e-3, 2.0, 250.0);
        CHECK(golden_rule_rate(bb, unit) / golden_rule_rate_approx(bb, unit) ==
              doctest::Approx(std::exp(-1.0 / 250.0)).epsilon(1e-14));
        CHECK(golden_rule_rate_approx(bb, unit) == doctest::Approx(2 * kPi * 1e-3 / 250.0).epsilon(1e-14));
        CHECK(golden_rule_rate_approx(bb, unit) == doctest::Approx(2.513e-5).epsilon(1e-3));
        CHECK(golden_rule_rate_approx(BroadbandReservoir(1e-3, 1.0, 250.0), EmitterSpec(3.0)) ==
              doctest::Approx(2 * kPi * 1e-3 * 3.0).epsilon(1e-14));

        const BroadbandReservoir pl(1e-3, 1.5, 250.0, PowerLorentz{4.0});
        CHECK(golden_rule_rate_approx(pl, unit) / golden_rule_rate(pl, unit) ==
              doctest::Approx(1.0 / cutoff_function(pl.cutoff(), 1.0 / 250.0)).epsilon(1e-14));
    }

    TEST_CASE("zeno slope closed forms")
    {
        const BroadbandReservoir ohmic(0.01, 1.0, 250.0);
        CHECK(zeno_slope(ohmic) == doctest::Approx(0.01 * 250.0 * 250.0).epsilon(1e-14));
        const BroadbandReservoir super(0.01, 2.0, 250.0);
        CHECK(zeno_slope(super) == doctest::Approx(2 * 0.01 * 250.0 * 250.0).epsilon(1e-14));
        const NarrowbandReservoir sharp(0.3, 1e-9, 1.0);
        CHECK(zeno_slope(sharp) == doctest::Approx(0.09).epsilon(1e-8));
        const NarrowbandReservoir centred(0.3, 0.5, 0.5);
        CHECK(zeno_slope(centred) == doctest::Approx(0.09 * 0.75).epsilon(1e-14));
    }

    TEST_CASE("zeno slope matches brute-force trapezoid for exponential cutoffs")
    {
        for (double eta : {1.0, 1.5, 2.0, 3.0}) {
            const BroadbandReservoir bb(0.01, eta, 250.0);
            CAPTURE(eta);
            CHECK(std::abs(trapezoid_mass(bb, 2'000'000) / zeno_slope(bb) - 1.0) < 1e-6);
        }
    }

    TEST_CASE("power-lorentz zeno slope agrees with adaptive quadrature")
    {
        const BroadbandReservoir pl(0.01, 1.0, 250.0, PowerLorentz{4.0});
        // ∫ x (1+x²)^{-4} dx = 1/6
        CHECK(zeno_slope(pl) == doctest::Approx(0.01 * 250.0 * 250.0 / 6.0).epsilon(1e-9));
    }

    TEST_CASE("cutoff constants")
    {
        CHECK(cutoff_constant(Exponential{}) == 1.0);
        const double c4 = std::sqrt(kPi) / 2.0 * std::tgamma(3.5) / std::tgamma(4.0);
        CHECK(cutoff_constant(PowerLorentz{4.0}) == doctest::Approx(c4).epsilon(1e-10));
        CHECK(cutoff_constant(PowerLorentz{4.0}) == doctest::Approx(0.4909).epsilon(1e-4));
        double prev = cutoff_constant(PowerLorentz{1.0});
        CHECK(prev == doctest::Approx(kPi / 2).epsilon(1e-10));
        for (double mu : {2.0, 4.0, 8.0}) {
            const double c = cutoff_constant(PowerLorentz{mu});
            CHECK(c < prev);
            prev = c;
        }
    }

    TEST_CASE("coupling homogeneity")
    {
        const double c = 7.0;
        const BroadbandReservoir bb(0.01, 1.5, 250.0);
        const BroadbandReservoir bb_c = bb.with_lambda(c * 0.01);
        const NarrowbandReservoir nb(0.2, 0.05, 1.0);
        const NarrowbandReservoir nb_c = nb.with_g(0.2 * std::sqrt(c));
        const EmitterSpec unit(1.0);
        for (double w : {0.0, 1e-3, 0.7, 1.0, 3.0, 400.0}) {
            CHECK(bb_c.rsc(w) == doctest::Approx(c * bb.rsc(w)).epsilon(1e-14));
            CHECK(nb_c.rsc(w) == doctest::Approx(c * nb.rsc(w)).epsilon(1e-14));
        }
        CHECK(golden_rule_rate(bb_c, unit) == doctest::Approx(c * golden_rule_rate(bb, unit)).epsilon(1e-14));
        CHECK(golden_rule_rate(nb_c, unit) == doctest::Approx(c * golden_rule_rate(nb, unit)).epsilon(1e-14));
        CHECK(zeno_slope(bb_c) == doctest::Approx(c * zeno_slope(bb)).epsilon(1e-14));
        CHECK(zeno_slope(nb_c) == doctest::Approx(c * zeno_slope(nb)).epsilon(1e-14));
    }

    TEST_CASE("rsc is nonnegative on random valid models")
    {
        std::mt19937_64 rng(20240601);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int trial = 0; trial < 200; ++trial) {
            const double eta = 4.0 * u(rng);
            const double mu = 0.5 * (eta + 1.0) + 0.1 + 5.0 * u(rng);
            const BroadbandReservoir exp_bb(1e-3 + u(rng), eta, 1.0 + 500.0 * u(rng));
            const BroadbandReservoir pl_bb(1e-3 + u(rng), eta, 1.0 + 500.0 * u(rng), PowerLorentz{mu});
            const NarrowbandReservoir nb(1e-3 + u(rng), 1e-3 + u(rng), 1e-3 + 10.0 * u(rng));
            for (int k = 0; k < 20; ++k) {
                const double w = std::pow(10.0, -6.0 + 10.0 * u(rng));
                CHECK(exp_bb.rsc(w) >= 0.0);
                CHECK(pl_bb.rsc(w) >= 0.0);
                CHECK(nb.rsc(w) >= 0.0);
            }
        }
    }

    TEST_CASE("invalid models are rejected")
    {
        CHECK_THROWS_AS(BroadbandReservoir(0.0, 1.0, 250.0), InvalidModelError);
        CHECK_THROWS_AS(BroadbandReservoir(0.01, -0.1, 250.0), InvalidModelError);
        CHECK_THROWS_AS(BroadbandReservoir(0.01, 1.0, 0.0), InvalidModelError);
        CHECK_THROWS_AS(BroadbandReservoir(0.01, 1.0, 250.0, PowerLorentz{0.5}), InvalidModelError);
        CHECK_THROWS_AS(BroadbandReservoir(0.01, 3.0, 250.0, PowerLorentz{2.0}), InvalidModelError);
        CHECK_THROWS_AS(NarrowbandReservoir(0.0, 1.0, 1.0), InvalidModelError);
        CHECK_THROWS_AS(NarrowbandReservoir(1.0, -1.0, 1.0), InvalidModelError);
        CHECK_THROWS_AS(NarrowbandReservoir(1.0, 1.0, 0.0), InvalidModelError);
        CHECK_THROWS_AS(EmitterSpec(0.0), InvalidModelError);
        CHECK_THROWS(EmitterSpec(std::nan("")));
    }

    TEST_CASE("quality factor and warnings")
    {
        const auto nb = NarrowbandReservoir::from_quality(0.1, 10.0, 3.5e14);
        CHECK(nb.kappa() == doctest::Approx(1.75e13).epsilon(1e-15));
        CHECK(nb.quality_factor() == doctest::Approx(10.0).epsilon(1e-15));
        CHECK(BroadbandReservoir(0.01, 1.0, 250.0, PowerLorentz{3.0}).warnings().size() == 1);
        CHECK(BroadbandReservoir(0.01, 1.0, 250.0, PowerLorentz{4.0}).warnings().empty());
        CHECK(BroadbandReservoir(0.5, 1.0, 250.0).warnings().size() == 1);
    }
}

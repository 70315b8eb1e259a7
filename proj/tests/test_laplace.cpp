#include "doctest.h"

#include <cmath>

#include "ptlab/bounds.hpp"
#include "ptlab/laplace.hpp"
#include "ptlab/walks.hpp"

using namespace ptlab;

TEST_CASE("D at the corners") {
    for (double L : {1.0, 7.0})
        for (cplx z : {cplx(0.3, 2.0), cplx(-0.1, -5.0), cplx(4.0, 0.0)}) CHECK(std::abs(eval_D(0.0, z, L) - 1.0) < 1e-15);
    for (double x : {0.2, 1.0}) CHECK(std::abs(eval_D(x, cplx(0.0, 0.0), 3.0) - 1.0) < 1e-15);
    for (double L : {1.0, 4.0, 30.0})
        for (double g : {0.05, 0.2, 0.9}) {
            const double d = D_real_axis(g, L);
            const double w = std::sqrt(g * (2 * L - g));
            CHECK(d == doctest::Approx(std::cos(w) - g / w * std::sin(w)).epsilon(1e-12));
            CHECK(std::abs(eval_D(1.0, cplx(-g, 0.0), L) - d) < 1e-12);
        }
}

TEST_CASE("D is even in the square root") {
    const double L = 3.0;
    for (cplx z : {cplx(0.2, 1.0), cplx(-0.15, 12.0), cplx(2.0, -0.5)}) {
        const cplx r = eval_r(z, L);
        for (double x : {0.3, 1.0}) {
            const cplx a = std::cosh(x * r) + z * x * sinhc(x * r);
            const cplx b = std::cosh(-x * r) + z * x * sinhc(-x * r);
            CHECK(std::abs(a - b) < 1e-12);
            CHECK(std::abs(a - eval_D(x, z, L)) < 1e-12 * std::max(1.0, std::abs(a)));
        }
    }
    CHECK(std::abs(sinhc(cplx(1e-6, 0.0)) - 1.0) < 1e-12);
}

TEST_CASE("F") {
    CHECK_THROWS_AS(eval_F(cplx(0.0, 0.0), 2.0), DomainError);
    for (cplx z : {cplx(0.1, 3.0), cplx(-0.2, 0.7), cplx(1.0, 40.0)}) {
        const cplx a = eval_F(std::conj(z), 2.0), b = std::conj(eval_F(z, 2.0));
        CHECK(std::abs(a - b) < 1e-12 * std::max(1.0, std::abs(a)));
    }
    for (double L : {1.0, 4.0}) {
        const double lim = 1.0 - std::exp(-L);
        double prev = 1e300;
        for (double x : {10.0, 100.0, 1000.0}) {
            const double d = std::abs(x * eval_F(cplx(x, 0.0), L) - lim);
            CHECK(d < prev);
            prev = d;
        }
        CHECK(prev < 1e-2);
    }
    // F(1) = E[1 - exp(-(tau - 1)^+)] for Lambda = 1.
    const auto s = hitting_samples([](Rng& r) { return sim_pdmp(1.0, r); }, 1000000, 17);
    double m = 0.0, m2 = 0.0;
    for (double t : s) {
        const double v = 1.0 - std::exp(-std::max(t - 1.0, 0.0));
        m += v;
        m2 += v * v;
    }
    m /= s.size();
    const double se = std::sqrt((m2 / s.size() - m * m) / s.size());
    CHECK(std::abs(eval_F(cplx(1.0, 0.0), 1.0).real() - m) < 3.0 * se);
}

TEST_CASE("pole margins") {
    for (double L : {1.0, 2.0, 4.0, 8.0, 16.0}) {
        const double g = 1.0 / (L + 2.0);
        CHECK(pole_margin_check(L, g, 1.0 / (136.0 * L)) >= 0.07);
        CHECK(std::abs(D_real_axis(g, L)) >= 0.14);
        const double lo = -1.0 / (L + std::sqrt(2.0)) + 1e-3;
        CHECK(count_zeros_rectangle(L, lo, -1e-3, -50.0, 50.0) == 0);
    }
    CHECK_THROWS_AS(pole_margin_check(0.5, 0.3, 0.001), ConfigError);
    CHECK_THROWS_AS(pole_margin_check(2.0, 0.01, 0.001), ConfigError);
    CHECK_THROWS_AS(pole_margin_check(2.0, 0.25, 1.0), ConfigError);
}

TEST_CASE("C(Lambda, t) by inversion") {
    // Near t = 0 the curve starts at 1 - e^{-Lambda}.
    CHECK(estimate_C_t(4.0, 1e-3) == doctest::Approx(1.0 - std::exp(-4.0)).epsilon(1e-3));
    for (double t : {0.5, 2.0, 6.0}) CHECK(estimate_C_t(3.0, t) == doctest::Approx(estimate_C_t_direct(3.0, t)).epsilon(2e-3));
    // Theorem inequality against PDMP survival.
    const double L = 2.0;
    const auto c = survival_curve([L](Rng& r) { return sim_pdmp(L, r); }, {3.0, 6.0, 11.0}, 200000, 18);
    const double ts[] = {2.0, 5.0, 10.0};
    for (int i = 0; i < 3; ++i)
        CHECK(estimate_C_t(L, ts[i]) * std::exp(-ts[i] / (L + 2.0)) >= c.survival[i] - 3.0 * c.stderr_[i]);
    // Bromwich reconstruction in the right half-plane.
    const auto d = survival_curve([](Rng& r) { return sim_pdmp(2.0, r); }, {2.0, 3.0, 6.0}, 200000, 19);
    const double us[] = {1.0, 2.0, 5.0};
    for (int i = 0; i < 3; ++i)
        CHECK(std::abs(bromwich_inverse(2.0, 0.1, us[i]) - d.survival[i]) < 3.0 * d.stderr_[i] + 1e-4);
}

TEST_CASE("C(Lambda) supremum spot values") {
    CHECK(estimate_C(4.0).sup == doctest::Approx(0.982).epsilon(0.02 / 0.982));
    CHECK(estimate_C(512.0).sup == doctest::Approx(1.165).epsilon(0.02 / 1.165));
    const auto e = estimate_C(8.0, 60);
    std::size_t k = 0;
    while (e.t[k] < 2.0 * e.t_at_sup + 5.0) ++k;
    for (; k + 1 < e.t.size(); ++k) REQUIRE(e.c[k + 1] <= e.c[k] + 1e-5);
}

TEST_CASE("analytic C bound") {
    const double table[] = {0.632, 0.865, 0.982, 1.038, 1.091, 1.126, 1.146, 1.156, 1.162, 1.165};
    int i = 0;
    for (double L = 1.0; L <= 512.0; L *= 2.0, ++i) {
        const double b = c_analytic_bound(L);
        CHECK(std::isfinite(b));
        CHECK(b > 0.0);
        CHECK(b <= 106.0);
        CHECK(b >= table[i]);
    }
    CHECK_THROWS_AS(c_analytic_bound(2.0, 0.5, 10.0, 0.001), ConfigError);
    CHECK_THROWS_AS(c_analytic_bound(2.0, 0.25, 1.0, 0.001), ConfigError);
    CHECK_THROWS_AS(c_analytic_bound(2.0, 0.25, 10.0, 0.01), ConfigError);
    for (double L : {1.0, 3.0, 10.0})
        for (double f : {0.3, 0.7})
            for (double Bs : {1.0, 2.0}) {
                const double lo = 1.0 / (4 * L), hi = 1.0 / (L + std::sqrt(2.0));
                const double b = c_analytic_bound(L, lo + f * (hi - lo), Bs * std::sqrt(6.0) * (L + 1), 1.0 / (136 * L));
                CHECK(std::isfinite(b));
                CHECK(b > 0.0);
            }
}

#include "doctest.h"

#include <cmath>
#include <set>

#include "ptlab/core.hpp"
#include "ptlab/models.hpp"
#include "ptlab/rng.hpp"

using namespace ptlab;

TEST_CASE("philox known answers") {
    auto a = philox4x32({0, 0, 0, 0}, {0, 0});
    CHECK(a == std::array<std::uint32_t, 4>{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
    auto b = philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu});
    CHECK(b == std::array<std::uint32_t, 4>{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
    auto c = philox4x32({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u});
    CHECK(c == std::array<std::uint32_t, 4>{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("rng streams are reproducible and distinct") {
    Rng a(7, 1, 2, 3), b(7, 1, 2, 3), c(7, 1, 2, 4);
    for (int i = 0; i < 100; ++i) CHECK(a() == b());
    Rng d(7, 1, 2, 3);
    CHECK(d() != c());
    Rng u(1, 0, 0);
    double s = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const double x = u.uniform();
        REQUIRE(x > 0.0);
        REQUIRE(x < 1.0);
        s += x;
    }
    CHECK(s / 100000 == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("swap acceptance") {
    CHECK(swap_acceptance(0.2, 0.3, 1.5, 1.5) == 1.0);
    CHECK(swap_acceptance(0.2, 0.3, 1.0, 4.0) == 1.0);
    CHECK(swap_acceptance(0.0, 0.1, 5.0, 0.0) == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
    CHECK(swap_acceptance(0.0, 0.1, 5.0, 0.0) == doctest::Approx(0.60653).epsilon(1e-5));
    for (double dv : {-3.0, -0.1, 0.0, 0.7, 9.0}) {
        const double a = swap_acceptance(0.3, 0.5, 0.0, dv);
        const double b = swap_acceptance(0.3, 0.5, dv, 0.0);
        CHECK((a == 1.0 || b == 1.0));
        // Additive shift of log gamma_1 shifts both energies.
        CHECK(swap_acceptance(0.3, 0.5, 12.5, dv + 12.5) == doctest::Approx(a).epsilon(1e-12));
    }
    const double inf = std::numeric_limits<double>::infinity();
    CHECK(swap_acceptance(0.3, 0.5, 1.0, inf) == 1.0);
    CHECK(swap_acceptance(0.3, 0.5, inf, 1.0) == 0.0);
    CHECK(swap_acceptance(0.3, 0.5, inf, inf) == 1.0);
    CHECK_THROWS(swap_acceptance(0.3, 0.5, std::nan(""), 1.0));
}

TEST_CASE("schedule validation") {
    CHECK(Schedule::uniform(4).betas() == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
    CHECK_THROWS_AS(Schedule({0.0, 0.5, 0.4, 1.0}), ConfigError);
    CHECK_THROWS_AS(Schedule({0.1, 1.0}), ConfigError);
    CHECK_THROWS_AS(Schedule({0.0, 0.9}), ConfigError);
}

TEST_CASE("energy and path density") {
    const auto g = GaussianPair::mean_shift(2.0);
    // V(x) = log pi0 - log pi1 = (x-2)^2/2 - x^2/2 = 2 - 2x.
    CHECK(energy(g, Vec{0.0}) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(energy(g, Vec{1.0}) == doctest::Approx(0.0).epsilon(1e-12));
    for (double x : {-1.0, 0.3, 2.5}) {
        CHECK(log_path_density(g, 0.0, Vec{x}) == doctest::Approx(g.log_reference(Vec{x})));
        const double d1 = log_path_density(g, 1.0, Vec{x}) - g.log_target(Vec{x});
        const double d0 = log_path_density(g, 1.0, Vec{0.0}) - g.log_target(Vec{0.0});
        CHECK(d1 == doctest::Approx(d0).epsilon(1e-12));
        // beta = 1/2 is N(1,1) up to a constant.
        const double h = log_path_density(g, 0.5, Vec{x}) + 0.5 * (x - 1.0) * (x - 1.0);
        const double h0 = log_path_density(g, 0.5, Vec{0.0}) + 0.5;
        CHECK(h == doctest::Approx(h0).epsilon(1e-12));
    }
    // Identical endpoints give a constant energy.
    const auto same = GaussianPair::mean_shift(0.0);
    CHECK(energy(same, Vec{-3.0}) == doctest::Approx(energy(same, Vec{4.0})));
}

TEST_CASE("ising energy at all-plus against enumeration") {
    IsingModel m;
    const Spins plus = 0xffff;
    CHECK(ising_coupling_sum(plus) == 32);
    CHECK(energy(m, plus) == doctest::Approx(m.log_reference(plus) - 32.0));
    const auto d = ising_exact_distribution(1.0);
    CHECK(std::exp(m.log_target(plus) - d.log_normalizer) == doctest::Approx(d.prob[plus]).epsilon(1e-12));
}

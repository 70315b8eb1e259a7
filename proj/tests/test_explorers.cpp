#include "doctest.h"

#include <cmath>

#include "ptlab/diagnostics.hpp"
#include "ptlab/explorers.hpp"
#include "ptlab/models.hpp"

using namespace ptlab;

namespace {
struct PointMass final : TargetModel<Vec> {
    std::string name() const override { return "point"; }
    double log_reference(const Vec&) const override { return 0.0; }
    double log_target(const Vec&) const override { return 0.0; }
    bool has_reference_sampler() const override { return true; }
    Vec sample_reference(Rng&) const override { return Vec{4.25}; }
};
struct NoSampler final : TargetModel<Vec> {
    std::string name() const override { return "bare"; }
    double log_reference(const Vec& x) const override { return -0.5 * x[0] * x[0]; }
    double log_target(const Vec& x) const override { return -0.5 * x[0] * x[0]; }
};
}  // namespace

TEST_CASE("iid reference step") {
    PointMass pm;
    Rng rng(1, 0, 0);
    for (int i = 0; i < 10; ++i) CHECK(iid_reference_step<Vec>(pm, rng)[0] == 4.25);
    NoSampler ns;
    CHECK_THROWS_AS(iid_reference_step<Vec>(ns, rng), ConfigError);
    CHECK_THROWS_AS(ideal_ele_step<Vec>(ns, 0.5, rng), ConfigError);
    CHECK_THROWS_AS(IdealEleExplorer<Vec>{ns}, ConfigError);

    IsingModel im;
    std::array<long, 16> plus{};
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const Spins s = iid_reference_step<Spins>(im, rng);
        for (int k = 0; k < 16; ++k) plus[k] += (s >> k) & 1;
    }
    for (int k = 0; k < 16; ++k) CHECK(std::abs(2.0 * plus[k] / n - 1.0) < 3.0 / std::sqrt(n));
}

TEST_CASE("ising gibbs: beta 0 resamples uniformly") {
    Rng rng(2, 0, 0);
    Spins x = 0;
    long same = 0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const Spins y = ising_gibbs_sweep(x, 0.0, rng, 1);
        same += (x & 1) == (y & 1);
        x = y;
    }
    CHECK(std::abs(same / double(n) - 0.5) < 3.0 * 0.5 / std::sqrt(n));
}

TEST_CASE("ising gibbs: flips from all-minus at beta 1") {
    // Site 0 is updated first with four minus neighbours: Pr(+) = 1/(1+e^8).
    Rng rng(3, 0, 0);
    const int n = 200000;
    long flips = 0;
    for (int i = 0; i < n; ++i) flips += ising_gibbs_sweep(0, 1.0, rng, 1) & 1;
    const double p = 1.0 / (1.0 + std::exp(8.0));
    CHECK(std::abs(flips / double(n) - p) < 3.0 * std::sqrt(p * (1 - p) / n) + 1e-6);
}

TEST_CASE("ising gibbs keeps pi_beta stationary") {
    IsingModel m;
    const auto exact = ising_exact_distribution(0.4);
    const std::size_t n = 100000;
    std::vector<std::uint32_t> s(n);
    Rng rng(4, 0, 0);
    for (std::size_t i = 0; i < n; ++i)
        s[i] = ising_gibbs_sweep(static_cast<Spins>(exact.sample(rng)), 0.4, rng, 1);
    CHECK(empirical_tv_discrete(s, exact) < tv_noise_floor(exact, n, 3, 9).mean + 0.01);
    (void)m;
}

TEST_CASE("ideal ele: exact draws with independent energies") {
    IsingModel m;
    const auto exact = ising_exact_distribution(0.6);
    IdealEleExplorer<Spins> k(m, {0.6});
    Rng rng(5, 0, 0);
    const std::size_t n = 100000;
    std::vector<std::uint32_t> s(n);
    std::vector<double> v(n);
    Spins x = 0;
    for (std::size_t i = 0; i < n; ++i) {
        x = k.step(x, 0.6, rng);
        s[i] = x;
        v[i] = energy(m, x);
    }
    const auto floor = tv_noise_floor(exact, n, 3, 10);
    CHECK(empirical_tv_discrete(s, exact) < floor.mean + 0.01);
    CHECK(std::abs(lag1_autocorr(v)) < 3.0 / std::sqrt(double(n)));
}

TEST_CASE("rwm: small steps accept, standard normal stationarity") {
    const auto g = GaussianPair::mean_shift(0.0);
    Rng rng(6, 0, 0);
    Vec x{0.3};
    int moved = 0;
    for (int i = 0; i < 1000; ++i) {
        const Vec y = rwm_step(g, x, 1.0, rng, 1e-6);
        moved += y[0] != x[0];
        x = y;
    }
    CHECK(moved >= 995);

    RwmExplorer k(g, 2.4);
    x = Vec{0.0};
    std::vector<double> xs;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        x = k.step(x, 1.0, rng);
        REQUIRE(!std::isnan(x[0]));
        xs.push_back(x[0]);
    }
    double mean = 0.0, var = 0.0;
    for (double v : xs) mean += v;
    mean /= n;
    for (double v : xs) var += (v - mean) * (v - mean);
    var /= n;
    const double se = std::sqrt(asymptotic_variance(xs) / n);
    CHECK(std::abs(mean) < 3.0 * se);
    CHECK(var == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("rwm on the bimodal target stays in its mode") {
    BimodalModel m;
    RwmExplorer k(m, 2.38);
    for (int rep = 0; rep < 100; ++rep) {
        Rng rng(7, 0, rep);
        Vec x{-100.0};
        bool crossed = false;
        for (int i = 0; i < 10000; ++i) {
            x = k.step(x, 1.0, rng);
            crossed = crossed || x[0] > 0.0;
        }
        REQUIRE_FALSE(crossed);
    }
}

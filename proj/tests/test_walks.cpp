#include "doctest.h"

#include <cmath>

#include "ptlab/bounds.hpp"
#include "ptlab/diagnostics.hpp"
#include "ptlab/walks.hpp"

using namespace ptlab;

namespace {
std::vector<std::int64_t> draws(std::size_t n, std::uint64_t seed, const std::function<std::int64_t(Rng&)>& f) {
    const auto s = hitting_samples([&](Rng& r) { return static_cast<double>(f(r)); }, n, seed);
    return std::vector<std::int64_t>(s.begin(), s.end());
}
}  // namespace

TEST_CASE("persistent walk") {
    Rng rng(1, 0, 0);
    for (int N : {1, 5, 30}) CHECK(sim_persistent_walk(N, 0.0, rng) == N);
    const auto x = draws(100000, 2, [](Rng& r) { return sim_persistent_walk(30, 0.1, r); });
    const auto tail = hitting_tail_table(Scheme::NRPT, 30, 0.1, 2000);
    CHECK(ks_distance_integer(x, tail) <= ks_band_99(x.size()));
    const auto y = draws(100000, 3, [](Rng& r) { return sim_persistent_walk(1, 0.4, r); });
    long over = 0;
    for (auto t : y) over += t > 1;
    CHECK(std::abs(over / 1e5 - 0.4) < 3.0 * std::sqrt(0.24 / 1e5));
}

TEST_CASE("lazy reversible walk") {
    const auto x = draws(100000, 4, [](Rng& r) { return sim_seo_walk(1, 0.3, r); });
    for (int t : {1, 3, 6}) {
        long over = 0;
        for (auto v : x) over += v > t;
        const double p = std::pow(0.65, t);
        CHECK(std::abs(over / 1e5 - p) < 3.0 * std::sqrt(p * (1 - p) / 1e5));
    }
    const auto y = draws(20000, 5, [](Rng& r) { return sim_seo_walk(30, 0.5, r); });
    const auto tail = hitting_tail_table(Scheme::RPT, 30, 0.5, 100000);
    CHECK(ks_distance_integer(y, tail) <= ks_band_99(y.size()));
    double m10 = 0.0, m20 = 0.0;
    Rng rng(6, 0, 0);
    for (int i = 0; i < 4000; ++i) {
        m10 += sim_seo_walk(10, 0.3, rng);
        m20 += sim_seo_walk(20, 0.3, rng);
    }
    const double ratio = m20 / m10;
    CHECK(ratio >= 3.2);
    CHECK(ratio <= 4.8);
}

TEST_CASE("pdmp") {
    Rng rng(7, 0, 0);
    CHECK(sim_pdmp(0.0, rng) == 1.0);
    for (double L : {1.0, 4.0}) {
        const auto c = survival_curve([L](Rng& r) { return sim_pdmp(L, r); }, {2.0, 6.0, 10.0}, 100000, 8);
        for (std::size_t i = 0; i < c.t.size(); ++i)
            CHECK(c.survival[i] <= pdmp_loose_bound(L, c.t[i]) + 3.0 * c.stderr_[i] + 1e-12);
    }
    const auto c = survival_curve([](Rng& r) { return sim_pdmp(4.0, r); }, {5.0, 10.0, 20.0}, 100000, 9);
    for (std::size_t i = 0; i < c.t.size(); ++i)
        CHECK(c.survival[i] <= nrpt_infinite_bound(4.0, c.t[i], 0.982) + 3.0 * c.stderr_[i] + 1e-12);
}

TEST_CASE("reflected brownian motion") {
    const double dt = 1e-4;
    const auto c = survival_curve([dt](Rng& r) { return sim_reflected_bm(r, dt, 4.5); }, {0.1, 1.0, 2.0, 4.0}, 20000, 10);
    for (std::size_t i = 0; i < c.t.size(); ++i) {
        const double s = rpt_infinite_tail(c.t[i]);
        CHECK(std::abs(c.survival[i] - s) < 3.0 * c.stderr_[i] + 2.0 * std::sqrt(dt));
        if (c.t[i] >= 1.0) CHECK(c.survival[i] <= rpt_infinite_bound(c.t[i]) + 3.0 * c.stderr_[i]);
    }
}

TEST_CASE("survival curves") {
    const auto c = survival_curve([](Rng&) { return 3.0; }, {0.0, 2.9, 3.0, 3.1}, 100, 1);
    CHECK(c.survival == std::vector<double>{1.0, 1.0, 0.0, 0.0});
    auto f = [](Rng& r) { return static_cast<double>(sim_persistent_walk(10, 0.4, r)); };
    std::vector<double> grid{5, 10, 20, 40};
    const auto a = survival_curve(f, grid, 5000, 77);
    const auto b = survival_curve(f, grid, 5000, 77);
    CHECK(a.survival == b.survival);
    CHECK_THROWS_AS(survival_curve(f, grid, 99, 1), ConfigError);
    for (double r : {0.1, 0.5, 0.9}) {
        std::vector<double> g;
        for (int t = 10; t <= 400; t += 30) g.push_back(t);
        const auto n = survival_curve([r](Rng& q) { return double(sim_persistent_walk(30, r, q)); }, g, 3000, 12);
        const auto s = survival_curve([r](Rng& q) { return double(sim_seo_walk(30, r, q)); }, g, 3000, 13);
        for (std::size_t i = 0; i < g.size(); ++i)
            CHECK(n.survival[i] <= s.survival[i] + 3.0 * std::hypot(n.stderr_[i], s.stderr_[i]) + 1e-12);
    }
}

TEST_CASE("trajectories") {
    Rng rng(3, 0, 0);
    const auto tr = persistent_walk_trajectory(30, 0.1, 500, rng);
    CHECK(tr.size() == 501);
    CHECK(tr[0] == 0);
    for (std::size_t i = 1; i < tr.size(); ++i) {
        REQUIRE(std::abs(tr[i] - tr[i - 1]) <= 1);
        REQUIRE(tr[i] >= 0);
        REQUIRE(tr[i] <= 30);
    }
}

#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "ptlab/core.hpp"
#include "ptlab/explorers.hpp"
#include "ptlab/models.hpp"

using namespace ptlab;

TEST_CASE("ising exact distribution") {
    for (double b : {0.0, 0.25, 0.5, 1.0}) {
        const auto d = ising_exact_distribution(b);
        CHECK(d.prob.size() == kIsingStates);
        CHECK(d.total() == doctest::Approx(1.0).epsilon(1e-12));
        for (std::size_t s = 0; s < kIsingStates; s += 97) CHECK(d.prob[s] == doctest::Approx(d.prob[0xffff ^ s]));
    }
    const auto u = ising_exact_distribution(0.0);
    CHECK(u.prob[1234] == doctest::Approx(1.0 / 65536.0));
    const auto d = ising_exact_distribution(1.0);
    const auto mx = std::max_element(d.prob.begin(), d.prob.end()) - d.prob.begin();
    CHECK((mx == 0 || mx == 0xffff));
    CHECK(d.prob[0] == doctest::Approx(d.prob[0xffff]));
    CHECK(ising_coupling_sum(0) == 32);
}

TEST_CASE("ising torus neighbours") {
    const auto n = ising_neighbors(0);
    std::vector<int> v(n.begin(), n.end());
    std::sort(v.begin(), v.end());
    CHECK(v == std::vector<int>{1, 3, 4, 12});
}

TEST_CASE("bimodal pair") {
    BimodalModel m;
    CHECK(BimodalModel::kReferenceVariance == 10001.0);
    for (double x : {0.5, 37.0, 100.0, 140.0}) CHECK(energy(m, Vec{x}) == doctest::Approx(energy(m, Vec{-x})));
    Rng rng(3, 0, 0);
    int pos = 0;
    const int n = 100000;
    double s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = m.sample_reference(rng)[0];
        pos += x > 0.0;
        s2 += x * x;
    }
    CHECK(std::abs(pos / double(n) - 0.5) < 3.0 * 0.5 / std::sqrt(n));
    CHECK(s2 / n == doctest::Approx(10001.0).epsilon(0.05));
}

TEST_CASE("bimodal exact path sampler") {
    BimodalModel m;
    Rng rng(4, 0, 0);
    double s = 0.0, s2 = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const double x = std::abs(m.sample_path(1.0, rng)[0]);
        s += x;
        s2 += x * x;
    }
    CHECK(s / n == doctest::Approx(100.0).epsilon(0.001));
    CHECK(s2 / n - (s / n) * (s / n) == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("disjoint modes stay in their interval") {
    DisjointModesModel m;
    ModeLocalExplorer k(m);
    Rng rng(5, 0, 0);
    Vec x{-10.0};
    std::vector<double> v;
    for (int i = 0; i < 5000; ++i) {
        x = k.step(x, 0.7, rng);
        REQUIRE(DisjointModesModel::mode_of(x) == 0);
        REQUIRE(x[0] >= -15.0);
        REQUIRE(x[0] <= -5.0);
        v.push_back(energy(m, x));
    }
    double mean = 0.0;
    for (double e : v) mean += e;
    mean /= v.size();
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) num += (v[i] - mean) * (v[i + 1] - mean);
    for (double e : v) den += (e - mean) * (e - mean);
    CHECK(std::abs(num / den) < 3.0 / std::sqrt(v.size()));
}

TEST_CASE("thin shell gibbs moves slowly") {
    CHECK_THROWS_AS(ThinShellModel(0.0), ConfigError);
    ThinShellModel m(100.0);
    Rng rng(6, 0, 0);
    Vec x = m.sample_target(rng);
    double s2 = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const Vec y = m.gibbs_step(x, rng);
        s2 += (y[0] - x[0]) * (y[0] - x[0]);
        x = y;
    }
    const double sd = std::sqrt(s2 / n);
    CHECK(sd > 0.5 / 100.0);
    CHECK(sd < 2.0 * std::sqrt(2.0) / 100.0);
}

TEST_CASE("gaussian pair moments and exact draws") {
    const auto g = GaussianPair::equicorrelated(3, 0.5, 1.0);
    const auto [m, s] = g.path_moments(1.0);
    CHECK(m(0) == doctest::Approx(1.0));
    CHECK(s(0, 1) == doctest::Approx(0.5));
    const auto a = GaussianPair::mean_shift(2.0).affine(2.0, 3.0);
    const auto [ma, sa] = a.path_moments(0.5);
    CHECK(ma(0) == doctest::Approx(5.0));
    CHECK(sa(0, 0) == doctest::Approx(4.0));
}

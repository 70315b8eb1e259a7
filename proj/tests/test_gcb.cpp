#include "doctest.h"

#include <cmath>

#include "ptlab/gcb.hpp"
#include "ptlab/models.hpp"

using namespace ptlab;

TEST_CASE("barrier function") {
    BarrierFn b({0.0, 0.5, 1.0}, {0.0, 1.0, 1.5});
    CHECK(b(0.25) == doctest::Approx(0.5));
    CHECK(b(1.0) == 1.5);
    CHECK(b.inverse(1.25) == doctest::Approx(0.75));
    CHECK(b.total() == 1.5);
    CHECK_THROWS_AS(BarrierFn({0.0, 1.0}, {0.0, -1.0}), ConfigError);
    CHECK_THROWS_AS(BarrierFn::from_rejections(Schedule::uniform(2), {0.1, std::nan("")}), ConfigError);
    const auto s = tune_schedule(b, 6);
    CHECK(s[0] == 0.0);
    CHECK(s[6] == 1.0);
    for (int n = 0; n <= 6; ++n) CHECK(b(s[n]) == doctest::Approx(1.5 * n / 6).epsilon(1e-12));
}

TEST_CASE("schedule tuning edge cases") {
    CHECK(tune_schedule(BarrierFn({0.0, 1.0}, {0.0, 3.0}), 1).betas() == std::vector<double>{0.0, 1.0});
    const auto u = tune_schedule(BarrierFn({0.0, 0.3, 1.0}, {0.0, 0.6, 2.0}), 4);
    for (int n = 0; n <= 4; ++n) CHECK(u[n] == doctest::Approx(n / 4.0).epsilon(1e-12));
    const auto z = tune_schedule(BarrierFn({0.0, 1.0}, {0.0, 0.0}), 3);
    CHECK(z[1] == doctest::Approx(1.0 / 3.0));
    CHECK_THROWS_AS(tune_schedule(BarrierFn(), 0), ConfigError);
}

TEST_CASE("analytic GCB bounds") {
    CHECK(gcb_tv_bound({0.0, 0.0}) == 0.0);
    CHECK(gcb_tv_bound({0.5}) == doctest::Approx(2.0));
    CHECK_THROWS_AS(gcb_tv_bound({1.0}), DomainError);
    CHECK(gaussian_tv_mean_shift(1.0) == doctest::Approx(0.3829).epsilon(1e-3));
    CHECK(gcb_tv_bound({gaussian_tv_mean_shift(1.0)}) == doctest::Approx(1.241).epsilon(1e-3));
    CHECK(gcb_kl_bound(0.0, 0.0) == doctest::Approx(2.0));
    CHECK(gcb_kl_bound(0.5, 0.5) == doctest::Approx(4.594).epsilon(1e-3));
    CHECK(gcb_kl_bound(std::numeric_limits<double>::infinity(), 0.1) == doctest::Approx(gcb_kl_bound(0.1, 0.1)));
    CHECK(gcb_product_bound({0.7}) == 0.7);
    CHECK(gcb_product_bound({0.7, 0.7, 0.7}) == doctest::Approx(2.1));
    CHECK(gcb_gaussian_submanifold_bound(0.0, 0.0) == doctest::Approx(1.0));
    CHECK(gcb_gaussian_submanifold_bound(0.5, 0.0) == doctest::Approx(std::sqrt(0.5 * std::log(2.0) + 1.5)).epsilon(1e-12));
    CHECK(gcb_gaussian_submanifold_bound(0.5, 0.0) == doctest::Approx(1.3589).epsilon(1e-4));
    CHECK_THROWS_AS(gcb_gaussian_submanifold_bound(1.0, 0.0), DomainError);
    Eigen::VectorXd m0 = Eigen::VectorXd::Zero(1), m1 = Eigen::VectorXd::Ones(1);
    Eigen::MatrixXd s = Eigen::MatrixXd::Identity(1, 1);
    CHECK(gaussian_kl(m0, s, m1, s) == doctest::Approx(0.5));
}

TEST_CASE("rejection sum against quadrature on a mean shift") {
    const auto g = GaussianPair::mean_shift(2.0);
    const auto q = gcb_quadrature<Vec>(g, 200, 10000, 3);
    // Lambda = mu / sqrt(pi) for a unit-variance mean shift.
    CHECK(q.lambda == doctest::Approx(2.0 / std::sqrt(M_PI)).epsilon(0.02));
    TuningOptions o;
    o.n_pairs = 20;
    o.rounds = 1;
    o.base_iterations = 20000;
    const auto res = tune_rounds<Vec>(g, [&](const Schedule& s) {
        return standard_kernels<Vec>(g, 20, std::make_shared<IdealEleExplorer<Vec>>(g, s.betas()));
    }, o);
    CHECK(res.estimate.lambda == doctest::Approx(q.lambda).epsilon(0.05));
}

TEST_CASE("identical endpoints have no barrier") {
    const auto g = GaussianPair::mean_shift(0.0);
    const auto q = gcb_quadrature<Vec>(g, 20, 1000, 1);
    CHECK(q.lambda == 0.0);
}

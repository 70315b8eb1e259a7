#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "ptlab/diagnostics.hpp"
#include "ptlab/engine.hpp"
#include "ptlab/models.hpp"

using namespace ptlab;
namespace fs = std::filesystem;

namespace {
std::vector<double> ar1(double phi, std::size_t n, std::uint64_t seed) {
    Rng rng(seed, 0, 0);
    std::vector<double> x(n);
    double v = rng.normal() / std::sqrt(1 - phi * phi);
    for (auto& e : x) {
        v = phi * v + rng.normal();
        e = v;
    }
    return x;
}
}  // namespace

TEST_CASE("lag-1 autocorrelation") {
    CHECK(lag1_autocorr(ar1(0.8, 10000, 1)) == doctest::Approx(0.8).epsilon(0.05 / 0.8));
    CHECK(std::abs(lag1_autocorr(ar1(0.0, 10000, 2))) < 3.0 / 100.0);
    std::vector<double> alt(100);
    for (std::size_t i = 0; i < alt.size(); ++i) alt[i] = i % 2 ? 1.0 : -1.0;
    CHECK(lag1_autocorr(alt) == doctest::Approx(-1.0));
    CHECK_THROWS_AS(lag1_autocorr(std::vector<double>(100, 2.0)), DomainError);
    CHECK_THROWS_AS(lag1_autocorr(std::vector<double>(10, 2.0)), ConfigError);
}

TEST_CASE("empirical TV") {
    const auto d = ising_exact_distribution(0.5);
    std::vector<std::uint32_t> one(50, 7);
    CHECK(empirical_tv_discrete(one, d) == doctest::Approx(1.0 - d.prob[7]).epsilon(1e-12));
    DiscreteDist half;
    half.prob = {0.5, 0.5, 0.0, 0.0};
    CHECK(empirical_tv_discrete({2, 3, 2}, half) == doctest::Approx(1.0));
    const auto f = tv_noise_floor(d, 100000, 5, 3);
    CHECK(f.mean > 0.0);
    CHECK(f.mean < 0.4);
    Rng rng(9, 0, 0);
    std::vector<std::uint32_t> s(100000);
    for (auto& v : s) v = static_cast<std::uint32_t>(d.sample(rng));
    const double tv = empirical_tv_discrete(s, d);
    CHECK(std::abs(tv - f.mean) < 5.0 * f.sd + 1e-3);
}

TEST_CASE("asymptotic variance") {
    const auto x = ar1(0.0, 10000, 3);
    CHECK(asymptotic_variance(x) == doctest::Approx(1.0).epsilon(0.2));
    const auto y = ar1(0.5, 10000, 4);
    // Long-run variance of AR(1): Var (1 + phi)/(1 - phi) with Var = 1/(1 - phi^2).
    CHECK(asymptotic_variance(y) == doctest::Approx(4.0).epsilon(0.25));
    CHECK_THROWS_AS(batch_means(std::vector<double>(500, 1.0)), ConfigError);
    const auto bm = batch_means(ar1(0.3, 10000, 5));
    CHECK(bm.batch_size == 100);
    CHECK(bm.means.size() == 100);
}

TEST_CASE("goodness of fit statistics") {
    Rng rng(6, 0, 0);
    std::vector<double> z(500);
    for (auto& v : z) v = rng.normal();
    CHECK(anderson_darling_normal(z) < kAndersonDarling1Pct);
    for (auto& v : z) v = 1.0 + rng.normal();
    CHECK(anderson_darling_normal(z) > kAndersonDarling1Pct);
    CHECK(ks_band_99(10000) == doctest::Approx(0.0163));
    std::vector<std::int64_t> c(1000, 3);
    CHECK(ks_distance_integer(c, {1.0, 1.0, 1.0, 0.0}) == doctest::Approx(0.0));
}

TEST_CASE("export round trip") {
    const auto g = GaussianPair::mean_shift(1.5);
    PTConfig cfg;
    cfg.schedule = Schedule::uniform(4);
    cfg.iterations = 200;
    cfg.seed = 4;
    const auto tr = run_pt(cfg, g, standard_kernels<Vec>(g, 4, std::make_shared<IdealEleExplorer<Vec>>(g)));
    const fs::path dir = fs::temp_directory_path() / "ptlab_export_test";
    fs::remove_all(dir);
    const auto files = export_run(tr, cfg.schedule, dir, {"run_", 0.2});
    CHECK(files.size() == 5);
    const auto back = import_run(dir, "run_");
    CHECK(back.energies == tr.energies);
    CHECK(back.index == tr.index);
    CHECK(back.eps == tr.eps);
    CHECK(back.accepted == tr.accepted);
    CHECK(back.proposed == tr.proposed);
    CHECK(back.parity == tr.parity);
    CHECK(back.n_pairs == tr.n_pairs);

    TraceCore none;
    none.n_pairs = 2;
    const fs::path dir2 = dir / "empty";
    export_run(none, Schedule::uniform(2), dir2);
    std::ifstream f(dir2 / "energies.csv");
    std::string line;
    int lines = 0;
    while (std::getline(f, line)) ++lines;
    CHECK(lines == 1);
    fs::remove_all(dir);
}

#include "ptlab/explorers.hpp"

#include <cmath>

namespace ptlab {

Spins ising_gibbs_sweep(Spins x, double beta, Rng& rng, int sweeps) {
    // P(x_i = +1 | neighbours) = 1 / (1 + exp(-2 beta h)), h in {-4,-2,0,2,4}.
    double p_up[5];
    for (int k = 0; k < 5; ++k) p_up[k] = 1.0 / (1.0 + std::exp(-2.0 * beta * (2 * k - 4)));
    static const auto neighbors = [] {
        std::array<std::array<int, 4>, kIsingSites> nb{};
        for (int i = 0; i < kIsingSites; ++i) nb[i] = ising_neighbors(i);
        return nb;
    }();
    for (int sweep = 0; sweep < sweeps; ++sweep) {
        for (int site = 0; site < kIsingSites; ++site) {
            int h = 0;
            for (int j : neighbors[site]) h += ((x >> j) & 1u) ? 1 : -1;
            const bool up = rng.uniform() < p_up[(h + 4) / 2];
            x = up ? static_cast<Spins>(x | (1u << site)) : static_cast<Spins>(x & ~(1u << site));
        }
    }
    return x;
}

IsingGibbsExplorer::IsingGibbsExplorer(int sweeps) : sweeps_(sweeps) {
    if (sweeps < 1) throw ConfigError("ising gibbs: sweeps must be >= 1");
}

Vec rwm_step(const TargetModel<Vec>& model, const Vec& x, double beta, Rng& rng, double step_size) {
    if (!(step_size > 0.0)) throw ConfigError("rwm: step size must be positive");
    Vec y(x);
    for (double& v : y) v += step_size * rng.normal();
    const double ly = log_path_density(model, beta, y);
    if (ly == -std::numeric_limits<double>::infinity()) return x;
    const double lx = log_path_density(model, beta, x);
    if (std::log(rng.uniform()) < ly - lx) return y;
    return x;
}

RwmExplorer::RwmExplorer(const TargetModel<Vec>& model, std::function<double(double)> step_size)
    : model_(model), step_size_(std::move(step_size)) {}

RwmExplorer::RwmExplorer(const TargetModel<Vec>& model, double step_size)
    : model_(model), step_size_([step_size](double) { return step_size; }) {
    if (!(step_size > 0.0)) throw ConfigError("rwm: step size must be positive");
}

}  // namespace ptlab

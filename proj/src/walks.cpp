#include "ptlab/walks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ptlab/error.hpp"
#include "ptlab/parallel.hpp"

namespace ptlab {

namespace {
void check_walk(int N, double r) {
    if (N < 1) throw ConfigError("walk needs N >= 1");
    if (!(r >= 0.0 && r < 1.0)) throw ConfigError("rejection rate must lie in [0,1)");
}
}  // namespace

std::int64_t sim_persistent_walk(int N, double r, Rng& rng) {
    check_walk(N, r);
    int i = 0, e = 1;
    for (std::int64_t t = 1;; ++t) {
        const bool blocked = (e > 0 && i == N) || (e < 0 && i == 0);
        if (!blocked && rng.uniform() >= r)
            i += e;
        else
            e = -e;
        if (i == N && e > 0) return t;
    }
}

std::int64_t sim_seo_walk(int N, double r, Rng& rng) {
    check_walk(N, r);
    int i = 0;
    for (std::int64_t t = 1;; ++t) {
        // The chosen parity decides the direction of the proposal at i.
        const int dir = rng.uniform() < 0.5 ? 1 : -1;
        const bool blocked = (dir > 0 && i == N) || (dir < 0 && i == 0);
        if (!blocked && rng.uniform() >= r) i += dir;
        if (i == N) return t;
    }
}

int persistent_walk_position(int N, double r, int t, Rng& rng) {
    check_walk(N, r);
    int i = 0, e = 1;
    for (int s = 0; s < t; ++s) {
        const bool blocked = (e > 0 && i == N) || (e < 0 && i == 0);
        if (!blocked && rng.uniform() >= r)
            i += e;
        else
            e = -e;
    }
    return i;
}

int seo_walk_position(int N, double r, int t, Rng& rng) {
    check_walk(N, r);
    int i = 0;
    for (int s = 0; s < t; ++s) {
        const int dir = rng.uniform() < 0.5 ? 1 : -1;
        const bool blocked = (dir > 0 && i == N) || (dir < 0 && i == 0);
        if (!blocked && rng.uniform() >= r) i += dir;
    }
    return i;
}

std::vector<int> persistent_walk_trajectory(int N, double r, int t_max, Rng& rng) {
    check_walk(N, r);
    std::vector<int> path{0};
    path.reserve(static_cast<std::size_t>(std::max(t_max, 0)) + 1);
    int i = 0, e = 1;
    for (int s = 0; s < t_max; ++s) {
        const bool blocked = (e > 0 && i == N) || (e < 0 && i == 0);
        if (!blocked && rng.uniform() >= r)
            i += e;
        else
            e = -e;
        path.push_back(i);
    }
    return path;
}

std::vector<int> seo_walk_trajectory(int N, double r, int t_max, Rng& rng) {
    check_walk(N, r);
    std::vector<int> path{0};
    path.reserve(static_cast<std::size_t>(std::max(t_max, 0)) + 1);
    int i = 0;
    for (int s = 0; s < t_max; ++s) {
        const int dir = rng.uniform() < 0.5 ? 1 : -1;
        const bool blocked = (dir > 0 && i == N) || (dir < 0 && i == 0);
        if (!blocked && rng.uniform() >= r) i += dir;
        path.push_back(i);
    }
    return path;
}

double sim_pdmp(double lambda, Rng& rng) {
    if (!(lambda >= 0.0)) throw ConfigError("pdmp: Lambda must be >= 0");
    double t = 0.0, x = 0.0;
    int e = 1;
    for (;;) {
        const double wall = e > 0 ? 1.0 - x : x;  // distance to the boundary ahead
        const double flip = lambda > 0.0 ? rng.exponential(lambda) : std::numeric_limits<double>::infinity();
        if (flip < wall) {
            t += flip;
            x += e * flip;
            e = -e;
            continue;
        }
        t += wall;
        if (e > 0) return t;  // arrived at 1 moving up
        x = 0.0;
        e = 1;  // reflect at 0
    }
}

double sim_reflected_bm(Rng& rng, double dt, double t_max) {
    if (!(dt > 0.0)) throw ConfigError("reflected BM: dt must be positive");
    const double sd = std::sqrt(dt);
    const double bridge_cut = 40.0 * dt;  // exp(-2 a b / dt) < 1e-34 beyond this
    double w = 0.0;
    for (std::int64_t k = 1;; ++k) {
        if (k * dt > t_max) return std::numeric_limits<double>::infinity();
        const double next = std::fabs(w + sd * rng.normal());
        if (next >= 1.0) return k * dt;
        const double a = 1.0 - w, b = 1.0 - next;
        if (a * b < bridge_cut && rng.uniform() < std::exp(-2.0 * a * b / dt)) return k * dt;
        w = next;
    }
}

std::vector<double> hitting_samples(const std::function<double(Rng&)>& simulator, std::size_t n_rep,
                                    std::uint64_t seed, std::uint32_t purpose) {
    std::vector<double> out(n_rep);
    parallel_for(n_rep, [&](std::size_t i) {
        Rng rng(seed, 0, static_cast<std::uint32_t>(i), purpose);
        out[i] = simulator(rng);
    });
    return out;
}

SurvivalCurve survival_from_samples(std::vector<double> samples, const std::vector<double>& t_grid) {
    std::sort(samples.begin(), samples.end());
    SurvivalCurve c;
    c.t = t_grid;
    c.replicates = samples.size();
    const double n = static_cast<double>(samples.size());
    for (double t : t_grid) {
        const auto alive = samples.end() - std::upper_bound(samples.begin(), samples.end(), t);
        const double s = alive / n;
        c.survival.push_back(s);
        c.stderr_.push_back(std::sqrt(s * (1.0 - s) / n));
    }
    return c;
}

SurvivalCurve survival_curve(const std::function<double(Rng&)>& simulator,
                             const std::vector<double>& t_grid, std::size_t n_rep,
                             std::uint64_t seed, std::uint32_t purpose) {
    if (n_rep < 100) throw ConfigError("survival curve: need at least 100 replicates");
    return survival_from_samples(hitting_samples(simulator, n_rep, seed, purpose), t_grid);
}

}  // namespace ptlab

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ptlab/rng.hpp"

namespace ptlab {

// Persistent walk on {0..N} x {-1,+1} from (0,+1): move in direction eps with
// probability 1-r, otherwise stay and flip; flips at the ends are forced.
// Returns the first time at (N,+1).
std::int64_t sim_persistent_walk(int N, double r, Rng& rng);

// Lazy reflected walk driven by a uniformly chosen parity each step. Returns
// the first time at N from 0.
std::int64_t sim_seo_walk(int N, double r, Rng& rng);

// Position after t steps of the same walks, without absorption.
int persistent_walk_position(int N, double r, int t, Rng& rng);
int seo_walk_position(int N, double r, int t, Rng& rng);

// Positions at times 0..t_max.
std::vector<int> persistent_walk_trajectory(int N, double r, int t_max, Rng& rng);
std::vector<int> seo_walk_trajectory(int N, double r, int t_max, Rng& rng);

// Exact event-driven simulation of the velocity-flip process on [0,1]:
// unit speed, direction flips at rate Lambda, reflection at the ends.
// Returns the first time at (1,+1) from (0,+1).
double sim_pdmp(double lambda, Rng& rng);

// Brownian motion on [0,1] reflected at 0, started at 0; Euler steps of
// size dt with a Brownian-bridge crossing test. Returns the first passage
// time of 1. Paths still alive at t_max return +infinity.
double sim_reflected_bm(Rng& rng, double dt, double t_max = 1e300);

struct SurvivalCurve {
    std::vector<double> t;
    std::vector<double> survival;
    std::vector<double> stderr_;
    std::size_t replicates = 0;
};

// Empirical Pr(tau > t) from hitting samples. Replicate i draws from
// Rng(seed, 0, i, purpose) so the curve does not depend on scheduling.
SurvivalCurve survival_curve(const std::function<double(Rng&)>& simulator,
                             const std::vector<double>& t_grid, std::size_t n_rep,
                             std::uint64_t seed, std::uint32_t purpose = 0);

// Same from given hitting samples.
SurvivalCurve survival_from_samples(std::vector<double> samples, const std::vector<double>& t_grid);

// n_rep hitting samples in replicate order.
std::vector<double> hitting_samples(const std::function<double(Rng&)>& simulator, std::size_t n_rep,
                                    std::uint64_t seed, std::uint32_t purpose = 0);

}  // namespace ptlab

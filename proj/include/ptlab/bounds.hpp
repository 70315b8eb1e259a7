#pragma once

#include <cstdint>
#include <vector>

#include "ptlab/engine.hpp"

namespace ptlab {

// Row-stochastic transition matrix stored as triples, 0-based indices.
// Index 0 is the absorbing state.
struct SparseTransition {
    struct Entry {
        int row;
        int col;
        double value;
    };
    Scheme scheme = Scheme::NRPT;
    int dim = 0;
    std::vector<Entry> entries;

    // Dense copy, row-major, for inspection and small tests.
    std::vector<double> dense() const;
    double at(int row, int col) const;  // 1-based row and column
    // q = p A for a row distribution p over states.
    void propagate(const std::vector<double>& p, std::vector<double>& q) const;
    // Index of the start state (0-based).
    int start_state() const { return scheme == Scheme::NRPT ? dim - 2 : dim - 1; }
};

// Index-process chain absorbed at the target: DEO gives 2N+2 states, SEO N+1.
SparseTransition build_transition(Scheme scheme, int N, double r);

// Pr(tau_N > t) for t = 0..t_max via repeated sparse products.
std::vector<double> hitting_tail_table(Scheme scheme, int N, double r, std::int64_t t_max);
double hitting_tail(Scheme scheme, int N, double r, std::int64_t t);

// Pr(tau_N > t - 1), the finite-chain TV bound. t >= 1.
double tv_bound_finite(Scheme scheme, int N, double r, std::int64_t t);

double coarse_bound(Scheme scheme, int N, double r, std::int64_t t);

// (1 - e^{-2 Lambda})^{floor(t/2)}.
double pdmp_loose_bound(double lambda, double t);

// min(1, C exp(-(t - shift) / (Lambda + 2))); shift 1 for the hitting tail,
// 2 for the TV form.
double nrpt_infinite_bound(double lambda, double t, double c = 106.0, double shift = 1.0);

// Reflected Brownian motion on [0,1] from 0: Pr(first passage of 1 > t).
double rpt_infinite_tail(double t, int k_max = 0);
double rpt_infinite_bound(double t);

// ceil(max(0, (log eps - log C) / log rho)).
long mixing_time_bound(double c, double rho, double eps);

// Exact law of the (non-absorbed) index position at time t for a machine
// started at chain 0 pointing up. Entry i is Pr(I_t = i).
std::vector<double> index_position_law(Scheme scheme, int N, double r, int t);

}  // namespace ptlab

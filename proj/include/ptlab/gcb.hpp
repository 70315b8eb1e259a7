#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "ptlab/engine.hpp"

namespace ptlab {

// Monotone piecewise-linear beta -> Lambda(beta) on [0,1] with Lambda(0) = 0.
class BarrierFn {
public:
    BarrierFn() = default;
    // knots[0] = 0, knots.back() = 1 strictly increasing; values non-decreasing from 0.
    BarrierFn(std::vector<double> knots, std::vector<double> values);
    // Cumulative rejection sums at the schedule points.
    static BarrierFn from_rejections(const Schedule& schedule, const std::vector<double>& rejection);

    double operator()(double beta) const;
    // Smallest beta with Lambda(beta) >= level, level in [0, total()].
    double inverse(double level) const;
    double total() const { return values_.empty() ? 0.0 : values_.back(); }
    const std::vector<double>& knots() const { return knots_; }
    const std::vector<double>& values() const { return values_; }

private:
    std::vector<double> knots_{0.0, 1.0};
    std::vector<double> values_{0.0, 0.0};
};

struct GcbEstimate {
    double lambda = 0.0;             // sum of per-pair rejection rates
    std::vector<double> rejection;   // r_hat per pair
    BarrierFn barrier;
};

GcbEstimate estimate_gcb(const SwapStats& stats, const Schedule& schedule);
GcbEstimate estimate_gcb(const TraceCore& trace, const Schedule& schedule, double burn_in_fraction = 0.2);

// beta_n = Lambda^{-1}(Lambda n / N); uniform grid when Lambda = 0.
Schedule tune_schedule(const BarrierFn& barrier, int n_pairs);

struct TuningOptions {
    Scheme scheme = Scheme::NRPT;
    int n_pairs = 10;
    int rounds = 3;                 // R
    int base_iterations = 1000;     // round r runs base * 2^r iterations
    int replicas = 1;               // independent runs pooled per round
    double burn_in_fraction = 0.2;
    std::uint64_t seed = 1;
};

struct TuningRound {
    int iterations = 0;
    Schedule schedule;      // schedule used in this round
    GcbEstimate estimate;   // statistics gathered with it
    long restarts = 0;
};

struct TuningResult {
    std::vector<TuningRound> rounds;
    Schedule schedule;      // tuned from the last round
    GcbEstimate estimate;   // last round's estimate
};

template <class S>
using KernelFactory = std::function<std::vector<ExplorerPtr<S>>(const Schedule&)>;

// Round r runs PT on the current schedule, pools post-burn-in swap
// statistics and re-tunes. Starts from the uniform grid unless `initial`
// is given.
template <class S>
TuningResult tune_rounds(const TargetModel<S>& model, const KernelFactory<S>& kernels,
                         const TuningOptions& opt, const InitFn<S>& init = {},
                         std::optional<Schedule> initial = std::nullopt) {
    if (opt.n_pairs < 1) throw ConfigError("tuning needs N >= 1");
    if (opt.rounds < 1) throw ConfigError("tuning needs at least one round");
    if (opt.base_iterations < 1 || opt.replicas < 1) throw ConfigError("tuning budget must be positive");
    TuningResult res;
    Schedule sched = initial ? *initial : Schedule::uniform(opt.n_pairs);
    if (sched.n() != opt.n_pairs) throw ConfigError("initial schedule has the wrong number of chains");
    for (int r = 0; r < opt.rounds; ++r) {
        PTConfig cfg;
        cfg.scheme = opt.scheme;
        cfg.schedule = sched;
        cfg.iterations = opt.base_iterations << r;
        cfg.seed = opt.seed + 7919ULL * static_cast<std::uint64_t>(r);
        cfg.record_energies = false;
        cfg.record_indices = true;
        const auto k = kernels(sched);
        std::vector<SwapStats> stats(opt.replicas);
        std::vector<long> restarts(opt.replicas);
        run_replicas<S>(cfg, model, k, opt.replicas, [&](std::size_t i, PTTrace<S>&& tr) {
            stats[i] = rejection_rates(tr, opt.burn_in_fraction);
            restarts[i] = restart_count(tr);
        }, init);
        SwapStats pooled = stats[0];
        long rs = restarts[0];
        for (int i = 1; i < opt.replicas; ++i) {
            pooled.merge(stats[i]);
            rs += restarts[i];
        }
        TuningRound round;
        round.iterations = cfg.iterations;
        round.schedule = sched;
        round.estimate = estimate_gcb(pooled, sched);
        round.restarts = rs;
        sched = tune_schedule(round.estimate.barrier, opt.n_pairs);
        res.rounds.push_back(std::move(round));
    }
    res.schedule = sched;
    res.estimate = res.rounds.back().estimate;
    return res;
}

// 2 sum TV_n / (1 - TV_n).
double gcb_tv_bound(const std::vector<double>& tv_values);
// 2 min over both directions of g(KL)/(1 - g(KL)), g(x) = 1 - exp(-x)/2.
double gcb_kl_bound(double kl_10, double kl_01);
double gcb_product_bound(const std::vector<double>& component_gcbs);
// sqrt(-log(1-rho)/2 + ((1+m)/(1-rho) + 1)/2).
double gcb_gaussian_submanifold_bound(double rho, double m);

// TV distance between N(0,1) and N(mu,1).
double gaussian_tv_mean_shift(double mu);
// KL(N(m_a, S_a) || N(m_b, S_b)).
double gaussian_kl(const Eigen::VectorXd& m_a, const Eigen::MatrixXd& s_a, const Eigen::VectorXd& m_b,
                   const Eigen::MatrixXd& s_b);

struct QuadratureEstimate {
    double lambda = 0.0;
    double stderr_ = 0.0;
    std::vector<double> nodes;
    std::vector<double> mean_abs_diff;  // E|V - V'| per node
};

// Lambda = (1/2) int_0^1 E|V(X) - V(X')| d beta with X, X' iid pi_beta, by
// midpoint nodes and i.i.d. pairs from the exact path sampler.
template <class S>
QuadratureEstimate gcb_quadrature(const TargetModel<S>& model, int nodes = 200, int pairs = 10000,
                                  std::uint64_t seed = 1) {
    if (nodes < 1 || pairs < 2) throw ConfigError("gcb_quadrature: need nodes >= 1 and pairs >= 2");
    if (!model.has_path_sampler()) throw ConfigError(model.name() + ": quadrature needs an exact path sampler");
    QuadratureEstimate q;
    q.nodes.resize(nodes);
    q.mean_abs_diff.resize(nodes);
    std::vector<double> var(nodes);
    parallel_for(nodes, [&](std::size_t k) {
        const double beta = (k + 0.5) / nodes;
        q.nodes[k] = beta;
        const auto draw = model.path_sampler(beta);
        Rng rng(seed, static_cast<std::uint32_t>(k), 0, 11);
        double mean = 0.0, m2 = 0.0;
        for (int i = 0; i < pairs; ++i) {
            const double d = std::abs(energy(model, draw(rng)) - energy(model, draw(rng)));
            const double delta = d - mean;
            mean += delta / (i + 1);
            m2 += delta * (d - mean);
        }
        q.mean_abs_diff[k] = mean;
        var[k] = m2 / (pairs - 1);
    });
    double s = 0.0, v = 0.0;
    for (int k = 0; k < nodes; ++k) {
        s += q.mean_abs_diff[k];
        v += var[k] / pairs;
    }
    q.lambda = 0.5 * s / nodes;
    q.stderr_ = 0.5 * std::sqrt(v) / nodes;
    return q;
}

}  // namespace ptlab

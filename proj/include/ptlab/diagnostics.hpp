#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "ptlab/engine.hpp"
#include "ptlab/models.hpp"
#include "ptlab/walks.hpp"

namespace ptlab {

// Energy series of one chain; values before `burn_in` are kept but skipped
// by the statistics.
struct EnergyTrace {
    std::vector<double> values;
    int chain = 0;
    std::size_t burn_in = 0;
};

EnergyTrace energy_trace(const TraceCore& trace, int chain, double burn_in_fraction = 0.2);

// Pearson correlation of (V_t, V_{t+1}) after burn-in; needs 30 points.
double lag1_energy_autocorr(const EnergyTrace& trace);
double lag1_autocorr(const std::vector<double>& x);

// 1/2 sum_s |p_hat(s) - p(s)| over the codes of `exact`.
double empirical_tv_discrete(const std::vector<std::uint32_t>& samples, const DiscreteDist& exact);

struct TvNoiseFloor {
    double mean = 0.0;  // E TV of n exact draws
    double sd = 0.0;
    int reps = 0;
};

// Calibrates the TV of n exact draws against the exact law.
TvNoiseFloor tv_noise_floor(const DiscreteDist& exact, std::size_t n, int reps, std::uint64_t seed);

struct BatchMeans {
    double sigma2 = 0.0;
    std::size_t batch_size = 0;
    std::vector<double> means;  // one per batch
};

// sqrt(T) batches of size sqrt(T); T >= 1000.
BatchMeans batch_means(const std::vector<double>& f);
double asymptotic_variance(const std::vector<double>& f);

// Anderson-Darling A^2 of a sample against a fully specified continuous cdf.
double anderson_darling(std::vector<double> x, const std::function<double(double)>& cdf);
double anderson_darling_normal(const std::vector<double>& z);
// Upper 1% point of A^2 for a fully specified null.
inline constexpr double kAndersonDarling1Pct = 3.857;

// sup |F_n - F| against a continuous cdf.
double ks_distance(std::vector<double> x, const std::function<double(double)>& cdf);
// sup_t |S_n(t) - tail[t]| for integer samples against an exact survival
// table tail[t] = Pr(tau > t), t = 0..tail.size()-1.
double ks_distance_integer(const std::vector<std::int64_t>& x, const std::vector<double>& tail);
double ks_two_sample(std::vector<double> a, std::vector<double> b);
// Asymptotic 99% band of the one-sample KS distance.
double ks_band_99(std::size_t n);
double ks_band_99(std::size_t n, std::size_t m);

// CSV / JSON export of a run. Files written under `dir` with `prefix`:
//   <prefix>energies.csv  t,chain_0..chain_N
//   <prefix>indices.csv   t,machine,index,eps
//   <prefix>swaps.csv     t,parity,pair,accepted
//   <prefix>pairwise.csv  chain,t,v_t,v_next (post burn-in)
//   <prefix>summary.json
struct ExportOptions {
    std::string prefix;
    double burn_in_fraction = 0.2;
};
std::vector<std::filesystem::path> export_run(const TraceCore& trace, const Schedule& schedule,
                                              const std::filesystem::path& dir,
                                              const ExportOptions& opt = {});
// Rebuilds the recorded series from the files of export_run.
TraceCore import_run(const std::filesystem::path& dir, const std::string& prefix = "");

// t,estimate,stderr
void write_survival_csv(const std::filesystem::path& path, const SurvivalCurve& curve);
// replica,t,index for index trajectories of the standalone walks.
void write_trajectories_csv(const std::filesystem::path& path,
                            const std::vector<std::vector<int>>& trajectories);

}  // namespace ptlab

#pragma once

#include <cstdint>
#include <vector>

#include "ptlab/diagnostics.hpp"
#include "ptlab/engine.hpp"
#include "ptlab/gcb.hpp"
#include "ptlab/models.hpp"

// Experiment recipes shared by the command-line tool and the acceptance suite.
namespace ptlab {

// ---- Ising TV experiment -------------------------------------------------

enum class IsingInit { AllMinus, Random };
IsingInit parse_ising_init(const std::string& s);

struct IsingValidateOptions {
    int chains = 6;
    int iterations = 25;
    std::size_t replicas = 100000;
    IsingInit init = IsingInit::AllMinus;
    int sweeps = 3;
    // Preliminary tuning runs that fix the schedule.
    int tune_rounds = 3;
    int tune_base_iterations = 4000;
    double burn_in_fraction = 0.2;
    int noise_reps = 20;
    std::uint64_t seed = 1;
};

struct IsingValidation {
    Schedule schedule;
    double lambda_tuning = 0.0;       // from the last tuning round
    double lambda_hat = 0.0;          // from the validation run, post burn-in
    double r_hat = 0.0;               // lambda_hat / N
    std::vector<double> rejection;    // per pair, validation run
    std::vector<int> t;               // 1..T
    std::vector<double> tv;           // empirical TV of the target chain at t
    std::vector<double> bound;        // tv_bound_finite(NRPT, N, r_hat, t)
    TvNoiseFloor floor;               // TV of `replicas` exact draws
};

std::vector<ExplorerPtr<Spins>> ising_kernels(const IsingModel& model, int n_pairs, int sweeps);
Schedule tune_ising_schedule(const IsingModel& model, int n_pairs, int sweeps, int rounds, int base_iterations,
                             std::uint64_t seed, double* lambda_out = nullptr);
IsingValidation ising_validate(const IsingValidateOptions& opt);

// ---- Bimodal example -----------------------------------------------------

// Standard deviation of pi_beta near a mode: precision (1-b)/10001 + b.
double bimodal_local_sd(double beta);
// Chain 0 draws from the reference; the others use random-walk Metropolis
// with a proposal scale proportional to the local sd.
std::vector<ExplorerPtr<Vec>> bimodal_kernels(const BimodalModel& model, int n_pairs);

// Tuning rounds for the bimodal pair. The barrier sits almost entirely near
// beta = 0, so the uniform starting grid needs more rounds than the default.
TuningResult tune_bimodal(const BimodalModel& model, int n_pairs, int rounds = 6, int base_iterations = 2000,
                          std::uint64_t seed = 5);

struct CltOptions {
    int runs = 500;
    int iterations = 50000;
    double burn_in_fraction = 0.2;
    std::uint64_t seed = 1;
};

struct CltResult {
    std::vector<double> z;    // sqrt(T) mean / sigma_hat per run
    double anderson_darling = 0.0;
};

// Standardized batch means of sign(x) on the target chain over independent runs.
CltResult bimodal_clt(const BimodalModel& model, const Schedule& schedule, const CltOptions& opt);

}  // namespace ptlab

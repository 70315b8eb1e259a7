#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include <Eigen/Dense>

#include "ptlab/core.hpp"

namespace ptlab {

// ---------------------------------------------------------------------------
// 4x4 Ising model on a torus. A configuration is a 16-bit code, bit i set
// meaning spin +1 at site i (row-major).

using Spins = std::uint16_t;

constexpr int kIsingSide = 4;
constexpr int kIsingSites = 16;
constexpr std::size_t kIsingStates = 65536;

// Sum over the 32 torus edges of x_i * x_j.
int ising_coupling_sum(Spins s);
int ising_spin(Spins s, int site);
Spins ising_flip(Spins s, int site);
std::array<int, 4> ising_neighbors(int site);

// Exact probability table over an enumerable state space.
struct DiscreteDist {
    std::vector<double> prob;
    std::vector<double> cdf;
    double log_normalizer = 0.0;

    std::size_t sample(Rng& rng) const;
    double total() const;
};

// pi_beta over all 2^16 spin codes, pi_beta(x) propto exp(beta * coupling sum).
DiscreteDist ising_exact_distribution(double beta);

class IsingModel final : public TargetModel<Spins> {
public:
    std::string name() const override { return "ising4x4"; }
    double log_reference(const Spins&) const override;
    double log_target(const Spins& x) const override;
    bool has_reference_sampler() const override { return true; }
    Spins sample_reference(Rng& rng) const override;
    bool has_path_sampler() const override { return true; }
    Spins sample_path(double beta, Rng& rng) const override;
    std::function<Spins(Rng&)> path_sampler(double beta) const override;

    // Cached exact table for one beta; thread-safe.
    std::shared_ptr<const DiscreteDist> table(double beta) const;

private:
    mutable std::mutex mutex_;
    mutable std::map<double, std::shared_ptr<const DiscreteDist>> cache_;
};

// ---------------------------------------------------------------------------
// One-dimensional bimodal target 0.5 N(-100,1) + 0.5 N(100,1) with reference
// N(0, 100^2 + 1). States are length-1 vectors.

class BimodalModel final : public TargetModel<Vec> {
public:
    static constexpr double kMode = 100.0;
    static constexpr double kReferenceVariance = 100.0 * 100.0 + 1.0;

    std::string name() const override { return "bimodal"; }
    double log_reference(const Vec& x) const override;
    double log_target(const Vec& x) const override;
    bool has_reference_sampler() const override { return true; }
    Vec sample_reference(Rng& rng) const override;
    // Exact draw by rejection: pi_0^{1-b} pi_1^b <= (1-b) pi_0 + b pi_1.
    bool has_path_sampler() const override { return true; }
    Vec sample_path(double beta, Rng& rng) const override;
};

// ---------------------------------------------------------------------------
// Gaussian reference N(m0, S0) and Gaussian target N(m1, S1) in d dimensions.
// The path stays Gaussian, so pi_beta can be sampled exactly.

class GaussianPair final : public TargetModel<Vec> {
public:
    GaussianPair(Eigen::VectorXd m0, Eigen::MatrixXd s0, Eigen::VectorXd m1, Eigen::MatrixXd s1);
    // N(0,1) -> N(mu,1) in one dimension.
    static GaussianPair mean_shift(double mu);
    // N(0, I_d) -> N(mu, Sigma) with unit variances and correlation rho.
    static GaussianPair equicorrelated(int d, double rho, double mean);
    // Both endpoints pushed through x -> a x + b.
    GaussianPair affine(double a, double b) const;

    int dim() const { return static_cast<int>(m0_.size()); }
    std::string name() const override { return "gaussian_pair"; }
    double log_reference(const Vec& x) const override;
    double log_target(const Vec& x) const override;
    bool has_reference_sampler() const override { return true; }
    Vec sample_reference(Rng& rng) const override;
    bool has_path_sampler() const override { return true; }
    Vec sample_path(double beta, Rng& rng) const override;
    std::function<Vec(Rng&)> path_sampler(double beta) const override;

    // Mean and covariance of pi_beta.
    std::pair<Eigen::VectorXd, Eigen::MatrixXd> path_moments(double beta) const;

private:
    struct Endpoint {
        Eigen::VectorXd mean;
        Eigen::MatrixXd prec;
        Eigen::LLT<Eigen::MatrixXd> chol_cov;
        double log_norm = 0.0;
    };
    static Endpoint make_endpoint(const Eigen::VectorXd& m, const Eigen::MatrixXd& s);
    static double log_density(const Endpoint& e, const Vec& x);
    Eigen::VectorXd m0_, m1_;
    Eigen::MatrixXd s0_, s1_;
    Endpoint e0_, e1_;
};

// ---------------------------------------------------------------------------
// Instructional targets whose kernels renew the energy exactly.

// Target 0.5 N(-10,1) on [-15,-5] + 0.5 N(10,1) on [5,15]; reference uniform
// on the two intervals.
class DisjointModesModel final : public TargetModel<Vec> {
public:
    std::string name() const override { return "disjoint_modes"; }
    double log_reference(const Vec& x) const override;
    double log_target(const Vec& x) const override;
    bool has_reference_sampler() const override { return true; }
    Vec sample_reference(Rng& rng) const override;
    // Fresh draw from pi_beta restricted to the interval holding x.
    Vec mode_local_step(const Vec& x, double beta, Rng& rng) const;
    static int mode_of(const Vec& x) { return x[0] < 0.0 ? 0 : 1; }
};

// Target N(x2; a x1, 1) 1{x1 in [0,1]}; reference Unif[0,1] x N(0, 1 + a^2/3).
class ThinShellModel final : public TargetModel<Vec> {
public:
    explicit ThinShellModel(double a);
    double a() const { return a_; }
    std::string name() const override { return "thin_shell"; }
    double log_reference(const Vec& x) const override;
    double log_target(const Vec& x) const override;
    bool has_reference_sampler() const override { return true; }
    Vec sample_reference(Rng& rng) const override;
    Vec sample_target(Rng& rng) const;
    // Two-block Gibbs update for the target.
    Vec gibbs_step(const Vec& x, Rng& rng) const;

private:
    double a_;
};

// Normal N(mean, sd^2) truncated to [lo, hi], by inversion.
double sample_truncated_normal(double mean, double sd, double lo, double hi, Rng& rng);

}  // namespace ptlab

#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "ptlab/error.hpp"
#include "ptlab/rng.hpp"

namespace ptlab {

using Vec = std::vector<double>;

// 0 = beta_0 < beta_1 < ... < beta_N = 1.
class Schedule {
public:
    Schedule() = default;
    explicit Schedule(std::vector<double> betas);
    static Schedule uniform(int n_pairs);

    int n() const { return static_cast<int>(betas_.size()) - 1; }
    std::size_t size() const { return betas_.size(); }
    double operator[](std::size_t i) const { return betas_[i]; }
    const std::vector<double>& betas() const { return betas_; }

private:
    std::vector<double> betas_{0.0, 1.0};
};

// exp(min(0, (b1 - b0) * (v1 - v0))). Infinite energies resolve through the
// clamp; equal infinite energies count as a tie.
double swap_acceptance(double beta_lo, double beta_hi, double v_lo, double v_hi);

// Reference pi_0 (normalized) and unnormalized target gamma_1 on state type S.
template <class S>
class TargetModel {
public:
    virtual ~TargetModel() = default;
    virtual std::string name() const = 0;
    virtual double log_reference(const S& x) const = 0;
    virtual double log_target(const S& x) const = 0;

    virtual bool has_reference_sampler() const { return false; }
    virtual S sample_reference(Rng&) const {
        throw ConfigError(name() + ": no direct sampler for the reference");
    }

    // Exact draws from pi_beta, when the model admits them.
    virtual bool has_path_sampler() const { return false; }
    virtual S sample_path(double beta, Rng& rng) const {
        if (beta == 0.0 && has_reference_sampler()) return sample_reference(rng);
        throw ConfigError(name() + ": no exact sampler for the annealing path");
    }
    // Samplers that amortize per-beta setup override this.
    virtual std::function<S(Rng&)> path_sampler(double beta) const {
        return [this, beta](Rng& rng) { return sample_path(beta, rng); };
    }
};

// V(x) = log pi_0(x) - log gamma_1(x). +inf when gamma_1(x) = 0.
template <class S>
double energy(const TargetModel<S>& model, const S& x) {
    const double lr = model.log_reference(x);
    const double lt = model.log_target(x);
    if (std::isnan(lr) || std::isnan(lt))
        throw DomainError(model.name() + ": log-density is NaN");
    if (!std::isfinite(lr)) throw DomainError(model.name() + ": state outside reference support");
    if (lt == -std::numeric_limits<double>::infinity())
        return std::numeric_limits<double>::infinity();
    return lr - lt;
}

// Unnormalized log pi_beta(x) = log pi_0(x) - beta * V(x).
template <class S>
double log_path_density(const TargetModel<S>& model, double beta, const S& x) {
    const double v = energy(model, x);
    if (beta == 0.0) return model.log_reference(x);
    if (std::isinf(v)) return -std::numeric_limits<double>::infinity();
    return model.log_reference(x) - beta * v;
}

}  // namespace ptlab

#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "ptlab/core.hpp"
#include "ptlab/models.hpp"

namespace ptlab {

// A pi_beta-invariant Markov kernel. beta is passed on every call so one
// kernel object can serve every chain of a schedule.
template <class S>
class Explorer {
public:
    virtual ~Explorer() = default;
    virtual S step(const S& x, double beta, Rng& rng) const = 0;
};

template <class S>
using ExplorerPtr = std::shared_ptr<const Explorer<S>>;

template <class S>
S iid_reference_step(const TargetModel<S>& model, Rng& rng) {
    if (!model.has_reference_sampler())
        throw ConfigError(model.name() + ": iid reference step needs a reference sampler");
    return model.sample_reference(rng);
}

template <class S>
S ideal_ele_step(const TargetModel<S>& model, double beta, Rng& rng) {
    if (!model.has_path_sampler())
        throw ConfigError(model.name() + ": ideal exploration needs an exact path sampler");
    return model.sample_path(beta, rng);
}

// Fresh reference draw regardless of the input state.
template <class S>
class IidReferenceExplorer final : public Explorer<S> {
public:
    explicit IidReferenceExplorer(const TargetModel<S>& model) : model_(model) {
        if (!model.has_reference_sampler())
            throw ConfigError(model.name() + ": iid reference step needs a reference sampler");
    }
    S step(const S&, double, Rng& rng) const override { return model_.sample_reference(rng); }

private:
    const TargetModel<S>& model_;
};

// Exact draw from pi_beta: the output energy is independent of the input.
// Samplers for the listed betas are built once up front.
template <class S>
class IdealEleExplorer final : public Explorer<S> {
public:
    explicit IdealEleExplorer(const TargetModel<S>& model, const std::vector<double>& betas = {})
        : model_(model) {
        if (!model.has_path_sampler())
            throw ConfigError(model.name() + ": ideal exploration needs an exact path sampler");
        for (double b : betas) samplers_.emplace_back(b, model.path_sampler(b));
    }
    S step(const S&, double beta, Rng& rng) const override {
        for (const auto& [b, f] : samplers_)
            if (b == beta) return f(rng);
        return model_.sample_path(beta, rng);
    }

private:
    const TargetModel<S>& model_;
    std::vector<std::pair<double, std::function<S(Rng&)>>> samplers_;
};

// Systematic-scan heat-bath Gibbs on the 4x4 torus, `sweeps` raster passes.
Spins ising_gibbs_sweep(Spins x, double beta, Rng& rng, int sweeps = 3);

class IsingGibbsExplorer final : public Explorer<Spins> {
public:
    explicit IsingGibbsExplorer(int sweeps = 3);
    Spins step(const Spins& x, double beta, Rng& rng) const override {
        return ising_gibbs_sweep(x, beta, rng, sweeps_);
    }

private:
    int sweeps_;
};

// Gaussian random-walk Metropolis targeting pi_beta of the model.
Vec rwm_step(const TargetModel<Vec>& model, const Vec& x, double beta, Rng& rng, double step_size);

class RwmExplorer final : public Explorer<Vec> {
public:
    // step_size(beta) gives the proposal scale used at that beta.
    RwmExplorer(const TargetModel<Vec>& model, std::function<double(double)> step_size);
    RwmExplorer(const TargetModel<Vec>& model, double step_size);
    Vec step(const Vec& x, double beta, Rng& rng) const override {
        return rwm_step(model_, x, beta, rng, step_size_(beta));
    }

private:
    const TargetModel<Vec>& model_;
    std::function<double(double)> step_size_;
};

// Mode-local exact sampler of the disjoint-modes example.
class ModeLocalExplorer final : public Explorer<Vec> {
public:
    explicit ModeLocalExplorer(const DisjointModesModel& model) : model_(model) {}
    Vec step(const Vec& x, double beta, Rng& rng) const override {
        return model_.mode_local_step(x, beta, rng);
    }

private:
    const DisjointModesModel& model_;
};

// Reference draw for chain 0 and `rest` for every other chain.
template <class S>
std::vector<ExplorerPtr<S>> standard_kernels(const TargetModel<S>& model, int n_pairs,
                                             ExplorerPtr<S> rest) {
    std::vector<ExplorerPtr<S>> k;
    k.push_back(std::make_shared<IidReferenceExplorer<S>>(model));
    for (int i = 0; i < n_pairs; ++i) k.push_back(rest);
    return k;
}

}  // namespace ptlab

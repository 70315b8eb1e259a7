#include "ptlab/recipes.hpp"

#include <cmath>

#include "ptlab/bounds.hpp"
#include "ptlab/parallel.hpp"

namespace ptlab {

IsingInit parse_ising_init(const std::string& s) {
    if (s == "all-minus") return IsingInit::AllMinus;
    if (s == "random") return IsingInit::Random;
    throw ConfigError("unknown init '" + s + "' (expected all-minus or random)");
}

std::vector<ExplorerPtr<Spins>> ising_kernels(const IsingModel& model, int n_pairs, int sweeps) {
    return standard_kernels<Spins>(model, n_pairs, std::make_shared<IsingGibbsExplorer>(sweeps));
}

Schedule tune_ising_schedule(const IsingModel& model, int n_pairs, int sweeps, int rounds, int base_iterations,
                             std::uint64_t seed, double* lambda_out) {
    TuningOptions t;
    t.scheme = Scheme::NRPT;
    t.n_pairs = n_pairs;
    t.rounds = rounds;
    t.base_iterations = base_iterations;
    t.seed = seed;
    const auto res = tune_rounds<Spins>(
        model, [&](const Schedule&) { return ising_kernels(model, n_pairs, sweeps); }, t);
    if (lambda_out) *lambda_out = res.estimate.lambda;
    return res.schedule;
}

IsingValidation ising_validate(const IsingValidateOptions& opt) {
    if (opt.chains < 2) throw ConfigError("ising-validate needs at least 2 chains");
    if (opt.iterations < 2) throw ConfigError("ising-validate needs at least 2 iterations");
    if (opt.replicas < 100) throw ConfigError("ising-validate needs at least 100 replicas");
    const int N = opt.chains - 1;
    const int T = opt.iterations;
    IsingModel model;

    IsingValidation out;
    out.schedule = tune_ising_schedule(model, N, opt.sweeps, opt.tune_rounds, opt.tune_base_iterations,
                                       opt.seed + 1000, &out.lambda_tuning);

    PTConfig cfg;
    cfg.scheme = Scheme::NRPT;
    cfg.schedule = out.schedule;
    cfg.iterations = T;
    cfg.seed = opt.seed;
    cfg.record_energies = false;
    cfg.record_indices = false;
    cfg.record_target_states = true;

    InitFn<Spins> init;
    if (opt.init == IsingInit::AllMinus)
        init = [](int, Rng&) { return Spins{0}; };
    else
        init = [&model](int, Rng& rng) { return model.sample_reference(rng); };

    const std::size_t R = opt.replicas;
    std::vector<std::uint32_t> samples(static_cast<std::size_t>(T + 1) * R);
    std::vector<SwapStats> stats(R);
    const auto kernels = ising_kernels(model, N, opt.sweeps);
    run_replicas<Spins>(cfg, model, kernels, R, [&](std::size_t r, PTTrace<Spins>&& tr) {
        for (int t = 0; t <= T; ++t) samples[t * R + r] = tr.target_states[t];
        stats[r] = rejection_rates(tr, opt.burn_in_fraction);
    }, init);

    SwapStats pooled = stats[0];
    for (std::size_t r = 1; r < R; ++r) pooled.merge(stats[r]);
    out.rejection = pooled.rejection;
    out.lambda_hat = pooled.lambda_hat();
    out.r_hat = out.lambda_hat / N;

    const DiscreteDist exact = ising_exact_distribution(1.0);
    out.floor = tv_noise_floor(exact, R, opt.noise_reps, opt.seed + 2000);
    const auto tail = hitting_tail_table(Scheme::NRPT, N, out.r_hat, T);
    for (int t = 1; t <= T; ++t) {
        const std::vector<std::uint32_t> s(samples.begin() + static_cast<std::ptrdiff_t>(t * R),
                                           samples.begin() + static_cast<std::ptrdiff_t>((t + 1) * R));
        out.t.push_back(t);
        out.tv.push_back(empirical_tv_discrete(s, exact));
        out.bound.push_back(tail[t - 1]);
    }
    return out;
}

double bimodal_local_sd(double beta) {
    return 1.0 / std::sqrt((1.0 - beta) / BimodalModel::kReferenceVariance + beta);
}

std::vector<ExplorerPtr<Vec>> bimodal_kernels(const BimodalModel& model, int n_pairs) {
    return standard_kernels<Vec>(model, n_pairs, std::make_shared<RwmExplorer>(model, [](double beta) {
        return 2.38 * bimodal_local_sd(beta);
    }));
}

TuningResult tune_bimodal(const BimodalModel& model, int n_pairs, int rounds, int base_iterations,
                          std::uint64_t seed) {
    TuningOptions t;
    t.scheme = Scheme::NRPT;
    t.n_pairs = n_pairs;
    t.rounds = rounds;
    t.base_iterations = base_iterations;
    t.seed = seed;
    return tune_rounds<Vec>(model, [&](const Schedule&) { return bimodal_kernels(model, n_pairs); }, t);
}

CltResult bimodal_clt(const BimodalModel& model, const Schedule& schedule, const CltOptions& opt) {
    if (opt.runs < 5) throw ConfigError("CLT check needs at least 5 runs");
    PTConfig cfg;
    cfg.scheme = Scheme::NRPT;
    cfg.schedule = schedule;
    cfg.iterations = opt.iterations;
    cfg.seed = opt.seed;
    cfg.record_energies = false;
    cfg.record_indices = false;
    cfg.record_target_states = true;
    const auto kernels = bimodal_kernels(model, schedule.n());
    CltResult out;
    out.z.resize(opt.runs);
    const auto skip = static_cast<std::size_t>(std::floor(opt.burn_in_fraction * opt.iterations)) + 1;
    run_replicas<Vec>(cfg, model, kernels, opt.runs, [&](std::size_t r, PTTrace<Vec>&& tr) {
        std::vector<double> f;
        f.reserve(tr.target_states.size() - skip);
        for (std::size_t t = skip; t < tr.target_states.size(); ++t)
            f.push_back(tr.target_states[t][0] > 0.0 ? 1.0 : -1.0);
        const auto bm = batch_means(f);
        double mean = 0.0;
        for (double v : f) mean += v;
        mean /= static_cast<double>(f.size());
        out.z[r] = std::sqrt(static_cast<double>(f.size())) * mean / std::sqrt(bm.sigma2);
    });
    out.anderson_darling = anderson_darling_normal(out.z);
    return out;
}

}  // namespace ptlab

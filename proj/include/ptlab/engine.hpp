#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ptlab/core.hpp"
#include "ptlab/explorers.hpp"
#include "ptlab/parallel.hpp"

namespace ptlab {

enum class Scheme { NRPT, RPT };
std::string to_string(Scheme s);
Scheme parse_scheme(const std::string& s);

// Even proposes pairs (n, n+1) with n even; Odd those with n odd.
enum class Parity : std::uint8_t { Even = 0, Odd = 1 };

// Purpose tags that keep the engine's random streams apart.
enum StreamPurpose : std::uint32_t {
    kStreamExplore = 1,
    kStreamCommunicate = 2,
    kStreamInit = 3,
};

struct PTConfig {
    Scheme scheme = Scheme::NRPT;
    Schedule schedule;
    int iterations = 1;
    std::uint64_t seed = 1;
    std::uint32_t replica = 0;
    bool record_energies = true;
    bool record_indices = true;
    bool record_states = false;         // every chain, every t
    bool record_target_states = false;  // chain N only
    bool parallel_chains = false;       // explore chains of one replica concurrently
};

// Everything a run records apart from states. Row t = 0 is the initial
// configuration and row t >= 1 the configuration after iteration t.
struct TraceCore {
    Scheme scheme = Scheme::NRPT;
    int n_pairs = 0;
    int iterations = 0;
    std::vector<Parity> parity;           // parity[t-1] = S_t, plus S_{T+1}
    std::vector<std::uint8_t> proposed;   // [t-1][pair]
    std::vector<std::uint8_t> accepted;   // [t-1][pair]
    std::vector<double> energies;         // [t][chain], post-communication
    std::vector<std::int16_t> index;      // [t][machine], chain occupied by machine
    std::vector<std::int8_t> eps;         // [t][machine], proposed direction

    int chains() const { return n_pairs + 1; }
    Parity parity_at(int t) const { return parity[t - 1]; }
    bool was_proposed(int t, int pair) const { return proposed[(t - 1) * n_pairs + pair] != 0; }
    bool was_accepted(int t, int pair) const { return accepted[(t - 1) * n_pairs + pair] != 0; }
    double energy(int t, int chain) const { return energies[t * chains() + chain]; }
    int index_of(int t, int machine) const { return index[t * chains() + machine]; }
    int eps_of(int t, int machine) const { return eps[t * chains() + machine]; }
    bool has_indices() const { return !index.empty(); }
    bool has_energies() const { return !energies.empty(); }
};

template <class S>
struct PTTrace : TraceCore {
    std::vector<S> states;         // [t][chain] when recorded
    std::vector<S> target_states;  // [t] when recorded
    const S& state(int t, int chain) const { return states[t * chains() + chain]; }
};

// Parity of iteration t (1-based) under DEO.
Parity deo_parity(int t);
bool pair_in(Parity p, int pair);

// Swap decisions for one communication round. uniforms[pair] is consumed
// only for pairs in the parity set; the output is a pure function of inputs.
std::vector<std::uint8_t> communication_step(const std::vector<double>& energies,
                                             const Schedule& schedule, Parity parity,
                                             const std::vector<double>& uniforms);
std::vector<std::uint8_t> communication_step(const std::vector<double>& energies,
                                             const Schedule& schedule, Parity parity, Rng& rng);

// Advances (I, eps) by one iteration. accepted[pair] flags accepted swaps of
// the round with parity `current`; `next` is the parity of the following
// round and fixes the new directions.
void update_index_process(std::vector<std::int16_t>& index, std::vector<std::int8_t>& eps,
                          const std::vector<std::uint8_t>& accepted, Parity current, Parity next);

// Direction a machine at chain i will propose in a round with parity p.
inline std::int8_t direction_for(int i, Parity p) {
    return ((i & 1) == static_cast<int>(p)) ? 1 : -1;
}

struct SwapStats {
    std::vector<long> proposals;
    std::vector<long> acceptances;
    std::vector<double> rejection;  // NaN where a pair was never proposed
    bool complete() const;
    double lambda_hat() const;      // sum of rejection rates
    void merge(const SwapStats& other);
};

// Counts iterations t > burn_in_fraction * T.
SwapStats rejection_rates(const TraceCore& trace, double burn_in_fraction = 0.0);

// Completed 0 -> N traversals summed over machines.
long restart_count(const TraceCore& trace);

// True when the ancestral path of the sample at chain N at time t never
// visits chain 0 at any s in [0, t-1].
bool ancestral_survives(const TraceCore& trace, int t);
// Same for every t in [1, T] in one pass.
std::vector<std::uint8_t> ancestral_survival_path(const TraceCore& trace);
// Fraction of traces whose ancestral path avoids chain 0 before t.
double ancestral_survival(const std::vector<const TraceCore*>& traces, int t);

// First time machine m reaches the top: (N, +1) for NRPT, N for RPT.
// Returns -1 when it does not happen within the trace.
int machine_hitting_time(const TraceCore& trace, int machine = 0);

template <class S>
using InitFn = std::function<S(int chain, Rng& rng)>;

namespace detail {
void check_config(const PTConfig& cfg, std::size_t n_kernels);
std::vector<Parity> parity_sequence(const PTConfig& cfg);
}  // namespace detail

// One run of the PT meta-algorithm. kernels[0] must be the reference
// sampler; one kernel per chain. Without `init` every chain starts from a
// reference draw.
template <class S>
PTTrace<S> run_pt(const PTConfig& cfg, const TargetModel<S>& model,
                  const std::vector<ExplorerPtr<S>>& kernels, const InitFn<S>& init = {}) {
    detail::check_config(cfg, kernels.size());
    const int n = cfg.schedule.n();
    const int chains = n + 1;
    const int T = cfg.iterations;

    PTTrace<S> tr;
    tr.scheme = cfg.scheme;
    tr.n_pairs = n;
    tr.iterations = T;
    tr.parity = detail::parity_sequence(cfg);
    tr.proposed.assign(static_cast<std::size_t>(T) * n, 0);
    tr.accepted.assign(static_cast<std::size_t>(T) * n, 0);

    std::vector<Rng> explore;
    explore.reserve(chains);
    for (int c = 0; c < chains; ++c) explore.emplace_back(cfg.seed, c, cfg.replica, kStreamExplore);
    Rng comm(cfg.seed, 0, cfg.replica, kStreamCommunicate);
    Rng init_rng(cfg.seed, 0, cfg.replica, kStreamInit);

    std::vector<S> x;
    x.reserve(chains);
    for (int c = 0; c < chains; ++c)
        x.push_back(init ? init(c, init_rng) : iid_reference_step(model, init_rng));
    std::vector<double> v(chains);
    for (int c = 0; c < chains; ++c) v[c] = energy(model, x[c]);

    std::vector<std::int16_t> idx(chains);
    std::vector<std::int8_t> eps(chains);
    for (int c = 0; c < chains; ++c) {
        idx[c] = static_cast<std::int16_t>(c);
        eps[c] = direction_for(c, tr.parity[0]);
    }

    auto record = [&](int) {
        if (cfg.record_energies) tr.energies.insert(tr.energies.end(), v.begin(), v.end());
        if (cfg.record_indices) {
            tr.index.insert(tr.index.end(), idx.begin(), idx.end());
            tr.eps.insert(tr.eps.end(), eps.begin(), eps.end());
        }
        if (cfg.record_states) tr.states.insert(tr.states.end(), x.begin(), x.end());
        if (cfg.record_target_states) tr.target_states.push_back(x[n]);
    };
    record(0);

    auto explore_chain = [&](std::size_t c) {
        x[c] = kernels[c]->step(x[c], cfg.schedule[c], explore[c]);
        v[c] = energy(model, x[c]);
    };

    for (int t = 1; t <= T; ++t) {
        if (cfg.parallel_chains)
            parallel_for(chains, explore_chain);
        else
            for (int c = 0; c < chains; ++c) explore_chain(c);

        const Parity p = tr.parity[t - 1];
        const auto acc = communication_step(v, cfg.schedule, p, comm);
        for (int k = 0; k < n; ++k) {
            if (!pair_in(p, k)) continue;
            tr.proposed[(t - 1) * n + k] = 1;
            if (!acc[k]) continue;
            tr.accepted[(t - 1) * n + k] = 1;
            std::swap(x[k], x[k + 1]);
            std::swap(v[k], v[k + 1]);
        }
        update_index_process(idx, eps, acc, p, tr.parity[t]);
        record(t);
    }
    return tr;
}

// Runs `replicas` independent copies (replica ids 0..replicas-1) in
// parallel and hands each finished trace to `sink(replica, trace)`.
template <class S>
void run_replicas(const PTConfig& base, const TargetModel<S>& model,
                  const std::vector<ExplorerPtr<S>>& kernels, std::size_t replicas,
                  const std::function<void(std::size_t, PTTrace<S>&&)>& sink,
                  const InitFn<S>& init = {}) {
    parallel_for(replicas, [&](std::size_t r) {
        PTConfig cfg = base;
        cfg.replica = static_cast<std::uint32_t>(r);
        sink(r, run_pt(cfg, model, kernels, init));
    });
}

}  // namespace ptlab

#include "ptlab/engine.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace ptlab {

std::string to_string(Scheme s) { return s == Scheme::NRPT ? "nrpt" : "rpt"; }

Scheme parse_scheme(const std::string& s) {
    if (s == "nrpt" || s == "NRPT" || s == "deo" || s == "DEO") return Scheme::NRPT;
    if (s == "rpt" || s == "RPT" || s == "seo" || s == "SEO") return Scheme::RPT;
    throw ConfigError("unknown scheme '" + s + "' (expected nrpt or rpt)");
}

Parity deo_parity(int t) { return ((t - 1) % 2 == 0) ? Parity::Even : Parity::Odd; }

bool pair_in(Parity p, int pair) { return (pair & 1) == static_cast<int>(p); }

std::vector<std::uint8_t> communication_step(const std::vector<double>& energies,
                                             const Schedule& schedule, Parity parity,
                                             const std::vector<double>& uniforms) {
    const int n = schedule.n();
    if (static_cast<int>(energies.size()) != n + 1 || static_cast<int>(uniforms.size()) < n)
        throw ConfigError("communication_step: size mismatch");
    std::vector<std::uint8_t> acc(n, 0);
    for (int k = 0; k < n; ++k) {
        if (!pair_in(parity, k)) continue;
        const double a = swap_acceptance(schedule[k], schedule[k + 1], energies[k], energies[k + 1]);
        acc[k] = uniforms[k] <= a ? 1 : 0;
    }
    return acc;
}

std::vector<std::uint8_t> communication_step(const std::vector<double>& energies,
                                             const Schedule& schedule, Parity parity, Rng& rng) {
    const int n = schedule.n();
    std::vector<double> u(n, 1.0);
    for (int k = 0; k < n; ++k)
        if (pair_in(parity, k)) u[k] = rng.uniform();
    return communication_step(energies, schedule, parity, u);
}

void update_index_process(std::vector<std::int16_t>& index, std::vector<std::int8_t>& eps,
                          const std::vector<std::uint8_t>& accepted, Parity current, Parity next) {
    const int chains = static_cast<int>(index.size());
    const int n = chains - 1;
    for (int m = 0; m < chains; ++m) {
        const int i = index[m];
        const int e = eps[m];
        if (e != direction_for(i, current))
            throw std::logic_error("index process: direction inconsistent with parity");
        const int pair = e > 0 ? i : i - 1;  // pair (pair, pair+1) the machine sits in
        if (pair >= 0 && pair < n && accepted[pair]) index[m] = static_cast<std::int16_t>(i + e);
        eps[m] = direction_for(index[m], next);
    }
#ifndef NDEBUG
    std::vector<int> seen(chains, 0);
    for (int m = 0; m < chains; ++m) {
        if (index[m] < 0 || index[m] > n || seen[index[m]]++)
            throw std::logic_error("index process is not a permutation");
    }
#endif
}

namespace detail {

void check_config(const PTConfig& cfg, std::size_t n_kernels) {
    if (cfg.iterations < 1) throw ConfigError("run_pt: iterations must be >= 1");
    if (n_kernels != cfg.schedule.size()) {
        std::ostringstream msg;
        msg << "run_pt: " << n_kernels << " kernels for " << cfg.schedule.size() << " chains";
        throw ConfigError(msg.str());
    }
    if (cfg.schedule.n() > std::numeric_limits<std::int16_t>::max() - 1)
        throw ConfigError("run_pt: too many chains");
}

std::vector<Parity> parity_sequence(const PTConfig& cfg) {
    std::vector<Parity> p(cfg.iterations + 1);
    if (cfg.scheme == Scheme::NRPT) {
        for (int t = 1; t <= cfg.iterations + 1; ++t) p[t - 1] = deo_parity(t);
    } else {
        Rng rng(cfg.seed, 1, cfg.replica, kStreamCommunicate);
        for (auto& q : p) q = rng.uniform() <= 0.5 ? Parity::Even : Parity::Odd;
    }
    return p;
}

}  // namespace detail

bool SwapStats::complete() const {
    for (long c : proposals)
        if (c == 0) return false;
    return !proposals.empty();
}

double SwapStats::lambda_hat() const {
    if (!complete()) throw ConfigError("swap statistics missing for at least one pair");
    double s = 0.0;
    for (double r : rejection) s += r;
    return s;
}

void SwapStats::merge(const SwapStats& other) {
    if (proposals.empty()) {
        *this = other;
        return;
    }
    if (other.proposals.size() != proposals.size()) throw ConfigError("SwapStats::merge: size mismatch");
    for (std::size_t k = 0; k < proposals.size(); ++k) {
        proposals[k] += other.proposals[k];
        acceptances[k] += other.acceptances[k];
        rejection[k] = proposals[k] > 0
                           ? 1.0 - static_cast<double>(acceptances[k]) / proposals[k]
                           : std::numeric_limits<double>::quiet_NaN();
    }
}

SwapStats rejection_rates(const TraceCore& tr, double burn_in_fraction) {
    if (!(burn_in_fraction >= 0.0 && burn_in_fraction < 1.0))
        throw ConfigError("burn-in fraction must lie in [0,1)");
    const int n = tr.n_pairs;
    SwapStats s;
    s.proposals.assign(n, 0);
    s.acceptances.assign(n, 0);
    s.rejection.assign(n, std::numeric_limits<double>::quiet_NaN());
    const int first = static_cast<int>(std::floor(burn_in_fraction * tr.iterations)) + 1;
    for (int t = first; t <= tr.iterations; ++t)
        for (int k = 0; k < n; ++k) {
            s.proposals[k] += tr.was_proposed(t, k);
            s.acceptances[k] += tr.was_accepted(t, k);
        }
    for (int k = 0; k < n; ++k)
        if (s.proposals[k] > 0)
            s.rejection[k] = 1.0 - static_cast<double>(s.acceptances[k]) / s.proposals[k];
    return s;
}

long restart_count(const TraceCore& tr) {
    if (!tr.has_indices()) throw ConfigError("restart_count: index process not recorded");
    const int chains = tr.chains();
    const int n = tr.n_pairs;
    long count = 0;
    for (int m = 0; m < chains; ++m) {
        bool armed = false;
        for (int t = 0; t <= tr.iterations; ++t) {
            const int i = tr.index_of(t, m);
            if (i == 0) armed = true;
            if (i == n && armed && n > 0) {
                ++count;
                armed = false;
            }
        }
    }
    return count;
}

std::vector<std::uint8_t> ancestral_survival_path(const TraceCore& tr) {
    if (!tr.has_indices()) throw ConfigError("ancestral survival: index process not recorded");
    const int chains = tr.chains();
    const int n = tr.n_pairs;
    // First visit of each machine to chain 0.
    std::vector<int> first_zero(chains, std::numeric_limits<int>::max());
    for (int m = 0; m < chains; ++m)
        for (int t = 0; t <= tr.iterations; ++t)
            if (tr.index_of(t, m) == 0) {
                first_zero[m] = t;
                break;
            }
    std::vector<std::uint8_t> out(tr.iterations + 1, 1);
    for (int t = 1; t <= tr.iterations; ++t) {
        int top = -1;
        for (int m = 0; m < chains; ++m)
            if (tr.index_of(t, m) == n) top = m;
        out[t] = first_zero[top] > t - 1 ? 1 : 0;
    }
    return out;
}

bool ancestral_survives(const TraceCore& tr, int t) {
    if (t < 1 || t > tr.iterations) throw ConfigError("ancestral survival: t outside the trace");
    return ancestral_survival_path(tr)[t] != 0;
}

double ancestral_survival(const std::vector<const TraceCore*>& traces, int t) {
    if (traces.empty()) throw ConfigError("ancestral survival: no traces");
    long alive = 0;
    for (const auto* tr : traces) alive += ancestral_survives(*tr, t);
    return static_cast<double>(alive) / traces.size();
}

int machine_hitting_time(const TraceCore& tr, int machine) {
    if (!tr.has_indices()) throw ConfigError("hitting time: index process not recorded");
    const int n = tr.n_pairs;
    for (int t = 0; t <= tr.iterations; ++t) {
        if (tr.index_of(t, machine) != n) continue;
        if (tr.scheme == Scheme::RPT || tr.eps_of(t, machine) == 1) return t;
    }
    return -1;
}

}  // namespace ptlab

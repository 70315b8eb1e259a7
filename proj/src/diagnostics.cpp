#include "ptlab/diagnostics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <limits>

#include <boost/math/distributions/normal.hpp>
#include <fmt/format.h>

#include "json.hpp"
#include "ptlab/parallel.hpp"

namespace ptlab {

namespace fs = std::filesystem;

EnergyTrace energy_trace(const TraceCore& trace, int chain, double burn_in_fraction) {
    if (!trace.has_energies()) throw ConfigError("trace has no recorded energies");
    if (chain < 0 || chain >= trace.chains()) throw ConfigError("chain index out of range");
    if (!(burn_in_fraction >= 0.0 && burn_in_fraction < 1.0)) throw ConfigError("burn-in fraction must lie in [0, 1)");
    EnergyTrace e;
    e.chain = chain;
    // Row 0 is the initial state; the series starts after the first iteration.
    for (int t = 1; t <= trace.iterations; ++t) e.values.push_back(trace.energy(t, chain));
    e.burn_in = static_cast<std::size_t>(std::floor(burn_in_fraction * e.values.size()));
    return e;
}

double lag1_autocorr(const std::vector<double>& x) {
    if (x.size() < 30) throw ConfigError("lag-1 autocorrelation needs at least 30 points");
    const std::size_t n = x.size() - 1;
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        ma += x[i];
        mb += x[i + 1];
    }
    ma /= n;
    mb /= n;
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(x[i]) || !std::isfinite(x[i + 1])) throw DomainError("non-finite energy after burn-in");
        const double a = x[i] - ma, b = x[i + 1] - mb;
        sab += a * b;
        saa += a * a;
        sbb += b * b;
    }
    if (saa == 0.0 || sbb == 0.0) throw DomainError("constant series: correlation undefined");
    return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

double lag1_energy_autocorr(const EnergyTrace& trace) {
    if (trace.burn_in >= trace.values.size()) throw ConfigError("no values after burn-in");
    return lag1_autocorr(std::vector<double>(trace.values.begin() + trace.burn_in, trace.values.end()));
}

double empirical_tv_discrete(const std::vector<std::uint32_t>& samples, const DiscreteDist& exact) {
    if (samples.empty()) throw ConfigError("empirical TV needs samples");
    const std::size_t S = exact.prob.size();
    std::vector<std::uint32_t> counts(S, 0);
    for (auto s : samples) {
        if (s >= S) throw ConfigError("sample code outside the state space");
        ++counts[s];
    }
    const double n = static_cast<double>(samples.size());
    double tv = 0.0;
    for (std::size_t s = 0; s < S; ++s) tv += std::abs(counts[s] / n - exact.prob[s]);
    return std::min(1.0, 0.5 * tv);
}

TvNoiseFloor tv_noise_floor(const DiscreteDist& exact, std::size_t n, int reps, std::uint64_t seed) {
    if (reps < 2 || n < 1) throw ConfigError("noise floor needs n >= 1 and reps >= 2");
    std::vector<double> tv(reps);
    parallel_for(reps, [&](std::size_t k) {
        Rng rng(seed, 0, static_cast<std::uint32_t>(k), 21);
        std::vector<std::uint32_t> s(n);
        for (auto& v : s) v = static_cast<std::uint32_t>(exact.sample(rng));
        tv[k] = empirical_tv_discrete(s, exact);
    });
    TvNoiseFloor f;
    f.reps = reps;
    f.mean = std::accumulate(tv.begin(), tv.end(), 0.0) / reps;
    double v = 0.0;
    for (double x : tv) v += (x - f.mean) * (x - f.mean);
    f.sd = std::sqrt(v / (reps - 1));
    return f;
}

BatchMeans batch_means(const std::vector<double>& f) {
    if (f.size() < 1000) throw ConfigError("batch means needs T >= 1000");
    const std::size_t b = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(f.size()))));
    const std::size_t m = f.size() / b;
    if (m < 2) throw ConfigError("too few batches");
    BatchMeans out;
    out.batch_size = b;
    out.means.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
        double s = 0.0;
        for (std::size_t i = 0; i < b; ++i) s += f[k * b + i];
        out.means[k] = s / b;
    }
    const double mu = std::accumulate(out.means.begin(), out.means.end(), 0.0) / m;
    double v = 0.0;
    for (double x : out.means) v += (x - mu) * (x - mu);
    out.sigma2 = b * v / (m - 1);
    return out;
}

double asymptotic_variance(const std::vector<double>& f) { return batch_means(f).sigma2; }

double anderson_darling(std::vector<double> x, const std::function<double(double)>& cdf) {
    if (x.size() < 5) throw ConfigError("Anderson-Darling needs at least 5 points");
    std::sort(x.begin(), x.end());
    const std::size_t n = x.size();
    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = std::clamp(cdf(x[i]), 1e-300, 1.0 - 1e-16);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        s += (2.0 * i + 1.0) * (std::log(u[i]) + std::log1p(-u[n - 1 - i]));
    return -static_cast<double>(n) - s / n;
}

double anderson_darling_normal(const std::vector<double>& z) {
    const boost::math::normal_distribution<double> nd;
    return anderson_darling(z, [&](double v) { return boost::math::cdf(nd, v); });
}

double ks_distance(std::vector<double> x, const std::function<double(double)>& cdf) {
    if (x.empty()) throw ConfigError("KS distance needs samples");
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double F = cdf(x[i]);
        d = std::max({d, (i + 1) / n - F, F - i / n});
    }
    return d;
}

double ks_distance_integer(const std::vector<std::int64_t>& x, const std::vector<double>& tail) {
    if (x.empty() || tail.empty()) throw ConfigError("KS distance needs samples and a table");
    const std::size_t T = tail.size();
    std::vector<std::size_t> at(T, 0);  // samples equal to t
    for (auto v : x) {
        if (v < 0) throw ConfigError("negative hitting time");
        if (static_cast<std::size_t>(v) < T) ++at[v];
    }
    const double n = static_cast<double>(x.size());
    double le = 0.0, d = 0.0;
    for (std::size_t t = 0; t < T; ++t) {
        le += at[t];
        d = std::max(d, std::abs((n - le) / n - tail[t]));
    }
    return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw ConfigError("two-sample KS needs two samples");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() || j < b.size()) {
        double v;
        if (j >= b.size() || (i < a.size() && a[i] <= b[j]))
            v = a[i];
        else
            v = b[j];
        while (i < a.size() && a[i] == v) ++i;
        while (j < b.size() && b[j] == v) ++j;
        d = std::max(d, std::abs(i / na - j / nb));
    }
    return d;
}

double ks_band_99(std::size_t n) { return 1.63 / std::sqrt(static_cast<double>(n)); }

double ks_band_99(std::size_t n, std::size_t m) {
    const double a = static_cast<double>(n), b = static_cast<double>(m);
    return 1.63 * std::sqrt((a + b) / (a * b));
}

namespace {

std::ofstream open_out(const fs::path& p) {
    std::ofstream f(p);
    if (!f) throw std::runtime_error("cannot write " + p.string());
    f.exceptions(std::ios::badbit | std::ios::failbit);
    return f;
}

std::ifstream open_in(const fs::path& p) {
    std::ifstream f(p);
    if (!f) throw std::runtime_error("cannot read " + p.string());
    return f;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto k = line.find(',', start);
        out.push_back(line.substr(start, k - start));
        if (k == std::string_view::npos) break;
        start = k + 1;
    }
    return out;
}

template <class T>
T parse(std::string_view s, const fs::path& p) {
    T v{};
    if (s == "inf") return static_cast<T>(std::numeric_limits<double>::infinity());
    if (s == "-inf") return static_cast<T>(-std::numeric_limits<double>::infinity());
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size())
        throw std::runtime_error("malformed field '" + std::string(s) + "' in " + p.string());
    return v;
}

}  // namespace

std::vector<fs::path> export_run(const TraceCore& trace, const Schedule& schedule, const fs::path& dir,
                                 const ExportOptions& opt) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
    const int C = trace.chains();
    const int rows = trace.has_energies() ? static_cast<int>(trace.energies.size() / C) : 0;
    const int irows = trace.has_indices() ? static_cast<int>(trace.index.size() / C) : 0;
    std::vector<fs::path> out;

    {
        const auto p = dir / (opt.prefix + "energies.csv");
        auto f = open_out(p);
        f << "t";
        for (int c = 0; c < C; ++c) f << ",chain_" << c;
        f << '\n';
        for (int t = 0; t < rows; ++t) {
            f << t;
            for (int c = 0; c < C; ++c) f << ',' << fmt::format("{}", trace.energy(t, c));
            f << '\n';
        }
        out.push_back(p);
    }
    {
        const auto p = dir / (opt.prefix + "indices.csv");
        auto f = open_out(p);
        f << "t,machine,index,eps\n";
        for (int t = 0; t < irows; ++t)
            for (int m = 0; m < C; ++m)
                f << t << ',' << m << ',' << trace.index_of(t, m) << ',' << trace.eps_of(t, m) << '\n';
        out.push_back(p);
    }
    {
        const auto p = dir / (opt.prefix + "swaps.csv");
        auto f = open_out(p);
        f << "t,parity,pair,accepted\n";
        const int T = static_cast<int>(trace.proposed.size() / std::max(1, trace.n_pairs));
        for (int t = 1; t <= T; ++t)
            for (int k = 0; k < trace.n_pairs; ++k)
                if (trace.was_proposed(t, k))
                    f << t << ',' << static_cast<int>(trace.parity_at(t)) << ',' << k << ','
                      << (trace.was_accepted(t, k) ? 1 : 0) << '\n';
        out.push_back(p);
    }
    {
        const auto p = dir / (opt.prefix + "pairwise.csv");
        auto f = open_out(p);
        f << "chain,t,v_t,v_next\n";
        const int start = std::max(1, static_cast<int>(std::floor(opt.burn_in_fraction * (rows - 1))) + 1);
        for (int c = 0; c < C; ++c)
            for (int t = start; t + 1 < rows; ++t)
                f << c << ',' << t << ',' << fmt::format("{}", trace.energy(t, c)) << ','
                  << fmt::format("{}", trace.energy(t + 1, c)) << '\n';
        out.push_back(p);
    }
    {
        const auto p = dir / (opt.prefix + "summary.json");
        nlohmann::json j;
        j["scheme"] = to_string(trace.scheme);
        j["n_pairs"] = trace.n_pairs;
        j["iterations"] = trace.iterations;
        j["schedule"] = schedule.betas();
        j["burn_in_fraction"] = opt.burn_in_fraction;
        std::vector<int> par;
        for (auto q : trace.parity) par.push_back(static_cast<int>(q));
        j["parity"] = par;
        if (trace.n_pairs > 0 && trace.iterations > 0) {
            const auto st = rejection_rates(trace, opt.burn_in_fraction);
            std::vector<nlohmann::json> rej;
            for (double r : st.rejection) rej.push_back(std::isnan(r) ? nlohmann::json(nullptr) : nlohmann::json(r));
            j["rejection"] = rej;
            if (st.complete()) j["lambda_hat"] = st.lambda_hat();
            if (trace.has_indices()) j["restarts"] = restart_count(trace);
        }
        auto f = open_out(p);
        f << j.dump(2) << '\n';
        out.push_back(p);
    }
    return out;
}

TraceCore import_run(const fs::path& dir, const std::string& prefix) {
    TraceCore tr;
    const auto sp = dir / (prefix + "summary.json");
    {
        auto f = open_in(sp);
        nlohmann::json j;
        try {
            f >> j;
            tr.scheme = parse_scheme(j.at("scheme").get<std::string>());
            tr.n_pairs = j.at("n_pairs").get<int>();
            tr.iterations = j.at("iterations").get<int>();
            for (int q : j.at("parity").get<std::vector<int>>()) tr.parity.push_back(static_cast<Parity>(q));
        } catch (const nlohmann::json::exception& e) {
            throw std::runtime_error("malformed " + sp.string() + ": " + e.what());
        }
    }
    const int C = tr.chains();
    std::string line;
    {
        const auto p = dir / (prefix + "energies.csv");
        auto f = open_in(p);
        std::getline(f, line);
        while (std::getline(f, line)) {
            const auto fields = split(line);
            if (static_cast<int>(fields.size()) != C + 1) throw std::runtime_error("bad row in " + p.string());
            for (int c = 0; c < C; ++c) tr.energies.push_back(parse<double>(fields[c + 1], p));
        }
    }
    {
        const auto p = dir / (prefix + "indices.csv");
        auto f = open_in(p);
        std::getline(f, line);
        while (std::getline(f, line)) {
            const auto fields = split(line);
            if (fields.size() != 4) throw std::runtime_error("bad row in " + p.string());
            tr.index.push_back(static_cast<std::int16_t>(parse<int>(fields[2], p)));
            tr.eps.push_back(static_cast<std::int8_t>(parse<int>(fields[3], p)));
        }
    }
    {
        const auto p = dir / (prefix + "swaps.csv");
        auto f = open_in(p);
        std::getline(f, line);
        tr.proposed.assign(static_cast<std::size_t>(tr.iterations) * tr.n_pairs, 0);
        tr.accepted.assign(static_cast<std::size_t>(tr.iterations) * tr.n_pairs, 0);
        while (std::getline(f, line)) {
            const auto fields = split(line);
            if (fields.size() != 4) throw std::runtime_error("bad row in " + p.string());
            const int t = parse<int>(fields[0], p), k = parse<int>(fields[2], p);
            if (t < 1 || t > tr.iterations || k < 0 || k >= tr.n_pairs)
                throw std::runtime_error("swap row out of range in " + p.string());
            tr.proposed[(t - 1) * tr.n_pairs + k] = 1;
            tr.accepted[(t - 1) * tr.n_pairs + k] = parse<int>(fields[3], p) != 0;
        }
    }
    return tr;
}

void write_survival_csv(const fs::path& path, const SurvivalCurve& curve) {
    auto f = open_out(path);
    f << "t,estimate,stderr\n";
    for (std::size_t i = 0; i < curve.t.size(); ++i)
        f << fmt::format("{},{},{}\n", curve.t[i], curve.survival[i], curve.stderr_[i]);
}

void write_trajectories_csv(const fs::path& path, const std::vector<std::vector<int>>& trajectories) {
    auto f = open_out(path);
    f << "replica,t,index\n";
    for (std::size_t r = 0; r < trajectories.size(); ++r)
        for (std::size_t t = 0; t < trajectories[r].size(); ++t)
            f << r << ',' << t << ',' << trajectories[r][t] << '\n';
}

}  // namespace ptlab

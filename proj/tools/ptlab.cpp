// ptlab: command-line front end for the parallel tempering laboratory.
//
// Every subcommand validates its inputs before computing, writes plot-ready
// CSV/JSON under the output directory and prints a JSON summary on stdout.
// Exit codes: 0 success, 1 validation error, 2 runtime error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "ptlab/bounds.hpp"
#include "ptlab/diagnostics.hpp"
#include "ptlab/engine.hpp"
#include "ptlab/explorers.hpp"
#include "ptlab/gcb.hpp"
#include "ptlab/laplace.hpp"
#include "ptlab/models.hpp"
#include "ptlab/parallel.hpp"
#include "ptlab/recipes.hpp"
#include "ptlab/walks.hpp"

using json = nlohmann::json;
namespace fs = std::filesystem;
using namespace ptlab;

namespace {

struct Common {
    std::string config;
    unsigned threads = 0;
    std::uint64_t seed = 1;
    std::string out;
};

struct ModelOpts {
    std::string model = "gaussian-shift";
    std::string scheme = "nrpt";
    int N = 10;
    int iters = 2000;
    std::string schedule = "uniform";
    std::string explorer = "default";
    double mu = 2.0;
    double burn_in = 0.2;
};

fs::path out_dir(const Common& c, const std::string& sub) {
    fs::path base;
    if (!c.out.empty())
        base = c.out;
    else if (const char* env = std::getenv("PTLAB_OUT_DIR"); env && *env)
        base = env;
    else
        base = "ptlab_out";
    const fs::path p = base / sub;
    std::error_code ec;
    fs::create_directories(p, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + p.string() + ": " + ec.message());
    return p;
}

std::vector<double> parse_list(const std::string& s, const std::string& what) {
    std::vector<double> v;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ConfigError("malformed " + what + " entry '" + item + "'");
        }
    }
    if (v.empty()) throw ConfigError(what + " is empty");
    return v;
}

Schedule make_schedule(const std::string& spec, int N) {
    if (spec == "uniform") return Schedule::uniform(N);
    Schedule s(parse_list(spec, "schedule"));
    if (s.n() != N) throw ConfigError("schedule has " + std::to_string(s.n()) + " pairs but N = " + std::to_string(N));
    return s;
}

void write_json(const fs::path& p, const json& j) {
    std::ofstream f(p);
    if (!f) throw std::runtime_error("cannot write " + p.string());
    f << j.dump(2) << '\n';
}

json files_json(const std::vector<fs::path>& files) {
    json a = json::array();
    for (const auto& f : files) a.push_back(f.string());
    return a;
}

json nan_to_null(const std::vector<double>& v) {
    json a = json::array();
    for (double x : v) a.push_back(std::isfinite(x) ? json(x) : json(nullptr));
    return a;
}

// Config file values fill options that were not given on the command line.
void apply_config(CLI::App& app, CLI::App* sub, const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot read config file " + path);
    json j;
    try {
        f >> j;
    } catch (const json::exception& e) {
        throw ConfigError("config file is not valid JSON: " + std::string(e.what()));
    }
    if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (key == "config") throw ConfigError("config files cannot nest");
        CLI::Option* opt = sub->get_option_no_throw("--" + key);
        if (!opt) opt = app.get_option_no_throw("--" + key);
        if (!opt) throw ConfigError("unknown config key '" + key + "'");
        if (opt->count() > 0) continue;
        std::string s;
        if (value.is_string())
            s = value.get<std::string>();
        else if (value.is_boolean())
            s = value.get<bool>() ? "true" : "false";
        else if (value.is_array()) {
            for (std::size_t i = 0; i < value.size(); ++i) s += (i ? "," : "") + value[i].dump();
        } else
            s = value.dump();
        opt->add_result(s);
        opt->run_callback();
    }
}

// ---- sample / tune / gcb ---------------------------------------------------

template <class S>
json sample_run(const TargetModel<S>& model, const std::vector<ExplorerPtr<S>>& kernels, const ModelOpts& m,
                const Common& c, const fs::path& dir) {
    PTConfig cfg;
    cfg.scheme = parse_scheme(m.scheme);
    cfg.schedule = make_schedule(m.schedule, m.N);
    cfg.iterations = m.iters;
    cfg.seed = c.seed;
    const auto tr = run_pt(cfg, model, kernels);
    ExportOptions eo;
    eo.burn_in_fraction = m.burn_in;
    const auto files = export_run(tr, cfg.schedule, dir, eo);
    json j;
    j["model"] = m.model;
    j["scheme"] = to_string(cfg.scheme);
    j["iterations"] = m.iters;
    const auto st = rejection_rates(tr, m.burn_in);
    j["rejection"] = nan_to_null(st.rejection);
    if (st.complete()) j["lambda_hat"] = st.lambda_hat();
    j["restarts"] = restart_count(tr);
    j["burn_in_fraction"] = m.burn_in;
    json ac = json::array();
    for (int ch = 0; ch < tr.chains(); ++ch) {
        try {
            ac.push_back(lag1_energy_autocorr(energy_trace(tr, ch, m.burn_in)));
        } catch (const std::exception&) {
            ac.push_back(nullptr);
        }
    }
    j["lag1_energy_autocorr"] = ac;
    j["files"] = files_json(files);
    return j;
}

template <class Fn>
json with_model(const ModelOpts& m, Fn&& fn) {
    if (m.N < 1) throw ConfigError("N must be at least 1");
    const Schedule sched = make_schedule(m.schedule, m.N);
    const bool ideal = m.explorer == "ideal";
    if (m.explorer != "default" && m.explorer != "ideal") throw ConfigError("explorer must be default or ideal");
    if (m.model == "ising") {
        static IsingModel model;
        KernelFactory<Spins> k = [&, ideal](const Schedule& s) {
            if (ideal)
                return standard_kernels<Spins>(model, m.N,
                                               std::make_shared<IdealEleExplorer<Spins>>(model, s.betas()));
            return ising_kernels(model, m.N, 3);
        };
        return fn(static_cast<const TargetModel<Spins>&>(model), k, sched);
    }
    if (m.model == "bimodal") {
        static BimodalModel model;
        KernelFactory<Vec> k = [&, ideal](const Schedule& s) {
            if (ideal)
                return standard_kernels<Vec>(model, m.N, std::make_shared<IdealEleExplorer<Vec>>(model, s.betas()));
            return bimodal_kernels(model, m.N);
        };
        return fn(static_cast<const TargetModel<Vec>&>(model), k, sched);
    }
    if (m.model == "gaussian-shift") {
        static std::map<double, std::unique_ptr<GaussianPair>> cache;
        auto& slot = cache[m.mu];
        if (!slot) slot = std::make_unique<GaussianPair>(GaussianPair::mean_shift(m.mu));
        const GaussianPair& model = *slot;
        KernelFactory<Vec> k = [&](const Schedule& s) {
            return standard_kernels<Vec>(model, m.N, std::make_shared<IdealEleExplorer<Vec>>(model, s.betas()));
        };
        return fn(static_cast<const TargetModel<Vec>&>(model), k, sched);
    }
    if (m.model == "disjoint") {
        static DisjointModesModel model;
        KernelFactory<Vec> k = [&](const Schedule&) {
            return standard_kernels<Vec>(model, m.N, std::make_shared<ModeLocalExplorer>(model));
        };
        return fn(static_cast<const TargetModel<Vec>&>(model), k, sched);
    }
    throw ConfigError("unknown model '" + m.model + "' (ising, bimodal, gaussian-shift, disjoint)");
}

json run_sample(const ModelOpts& m, const Common& c) {
    if (m.iters < 1) throw ConfigError("iters must be positive");
    const auto dir = out_dir(c, "sample");
    return with_model(m, [&](const auto& model, const auto& kernels, const Schedule& s) {
        return sample_run(model, kernels(s), m, c, dir);
    });
}

json tuning_json(const TuningResult& res) {
    json rounds = json::array();
    for (const auto& r : res.rounds) {
        json jr;
        jr["iterations"] = r.iterations;
        jr["schedule"] = r.schedule.betas();
        jr["lambda_hat"] = r.estimate.lambda;
        jr["rejection"] = r.estimate.rejection;
        jr["restarts"] = r.restarts;
        rounds.push_back(jr);
    }
    json j;
    j["rounds"] = rounds;
    j["lambda_hat"] = res.estimate.lambda;
    j["rejection"] = res.estimate.rejection;
    j["barrier_knots"] = {{"beta", res.estimate.barrier.knots()}, {"lambda", res.estimate.barrier.values()}};
    j["tuned_schedule"] = res.schedule.betas();
    return j;
}

struct TuneOpts {
    int rounds = 3;
    int base_iters = 1000;
    int replicas = 1;
    bool quadrature = false;
    int nodes = 200;
    int pairs = 10000;
};

json run_tune(const ModelOpts& m, const TuneOpts& t, const Common& c, const std::string& name) {
    if (t.rounds < 1 || t.base_iters < 1 || t.replicas < 1) throw ConfigError("tuning budget must be positive");
    const auto dir = out_dir(c, name);
    return with_model(m, [&](const auto& model, const auto& kernels, const Schedule& s) {
        TuningOptions o;
        o.scheme = parse_scheme(m.scheme);
        o.n_pairs = m.N;
        o.rounds = t.rounds;
        o.base_iterations = t.base_iters;
        o.replicas = t.replicas;
        o.burn_in_fraction = m.burn_in;
        o.seed = c.seed;
        const auto res = tune_rounds(model, kernels, o, {}, s);
        json j = tuning_json(res);
        j["model"] = m.model;
        j["scheme"] = m.scheme;
        j["burn_in_fraction"] = m.burn_in;
        if (t.quadrature) {
            if (!model.has_path_sampler()) throw ConfigError("quadrature needs a model with exact path draws");
            const auto q = gcb_quadrature(model, t.nodes, t.pairs, c.seed);
            j["quadrature"] = {{"lambda", q.lambda}, {"stderr", q.stderr_}, {"nodes", t.nodes}, {"pairs", t.pairs}};
        }
        const auto p = dir / (name + ".json");
        write_json(p, j);
        j["files"] = files_json({p});
        return j;
    });
}

// ---- bounds / hitting / laplace -------------------------------------------

struct BoundsOpts {
    std::string scheme = "nrpt";
    int N = 6;
    double r = 0.46;
    long tmax = 25;
    double lambda = 0.0;
    double C = 106.0;
};

json run_bounds(const BoundsOpts& b, const Common& c) {
    if (b.tmax < 1) throw ConfigError("tmax must be positive");
    std::vector<Scheme> schemes;
    if (b.scheme == "both")
        schemes = {Scheme::NRPT, Scheme::RPT};
    else
        schemes = {parse_scheme(b.scheme)};
    const auto dir = out_dir(c, "bounds");
    json j;
    j["N"] = b.N;
    j["r"] = b.r;
    j["tmax"] = b.tmax;
    std::vector<fs::path> files;
    for (Scheme s : schemes) {
        const auto tail = hitting_tail_table(s, b.N, b.r, b.tmax);
        const auto p = dir / ("bounds_" + to_string(s) + ".csv");
        std::ofstream f(p);
        if (!f) throw std::runtime_error("cannot write " + p.string());
        f << "t,hit_by_t,tail,tv_bound,coarse_bound";
        if (b.lambda > 0.0) f << ",pdmp_loose,infinite_bound";
        f << '\n';
        json rows = json::array();
        for (long t = 0; t <= b.tmax; ++t) {
            const double tv = t >= 1 ? tail[t - 1] : 1.0;
            const double coarse = coarse_bound(s, b.N, b.r, t);
            f << fmt::format("{},{},{},{},{}", t, 1.0 - tail[t], tail[t], tv, coarse);
            if (b.lambda > 0.0) {
                // Continuum time t / N (NRPT) or t / N^2 (RPT).
                const double u = s == Scheme::NRPT ? static_cast<double>(t) / b.N
                                                   : static_cast<double>(t) / (double(b.N) * b.N);
                const double inf = s == Scheme::NRPT ? nrpt_infinite_bound(b.lambda, u, b.C) : rpt_infinite_bound(u);
                f << fmt::format(",{},{}", pdmp_loose_bound(b.lambda, u), inf);
            }
            f << '\n';
            rows.push_back({{"t", t}, {"hit_by_t", 1.0 - tail[t]}, {"tail", tail[t]}, {"tv_bound", tv},
                            {"coarse_bound", coarse}});
        }
        j[to_string(s)] = rows;
        files.push_back(p);
    }
    j["files"] = files_json(files);
    return j;
}

struct HittingOpts {
    std::string process = "persistent";
    int N = 30;
    double r = 0.1;
    double lambda = 4.0;
    long reps = 100000;
    double tmax = 200;
    double tstep = 1.0;
    double dt = 1e-4;
    int trajectories = 0;
    int cutoff = 500;
};

json run_hitting(const HittingOpts& h, const Common& c) {
    if (h.reps < 100) throw ConfigError("reps must be at least 100");
    if (!(h.tstep > 0.0) || !(h.tmax > 0.0)) throw ConfigError("tmax and tstep must be positive");
    std::function<double(Rng&)> sim;
    const std::string p = h.process;
    if (p == "persistent")
        sim = [&](Rng& r) { return static_cast<double>(sim_persistent_walk(h.N, h.r, r)); };
    else if (p == "seo")
        sim = [&](Rng& r) { return static_cast<double>(sim_seo_walk(h.N, h.r, r)); };
    else if (p == "pdmp")
        sim = [&](Rng& r) { return sim_pdmp(h.lambda, r); };
    else if (p == "rbm") {
        if (!(h.dt > 0.0)) throw ConfigError("dt must be positive");
        sim = [&](Rng& r) { return sim_reflected_bm(r, h.dt, h.tmax); };
    } else
        throw ConfigError("unknown process '" + p + "' (persistent, seo, pdmp, rbm)");
    if ((p == "persistent" || p == "seo") && (h.N < 1 || !(h.r >= 0.0 && h.r < 1.0)))
        throw ConfigError("walks need N >= 1 and r in [0, 1)");
    if (p == "pdmp" && !(h.lambda >= 0.0)) throw ConfigError("lambda must be non-negative");

    std::vector<double> grid;
    for (long k = 0; k * h.tstep <= h.tmax + 1e-12; ++k) grid.push_back(k * h.tstep);
    const auto curve = survival_curve(sim, grid, static_cast<std::size_t>(h.reps), c.seed);
    const auto dir = out_dir(c, "hitting");
    const auto sp = dir / ("survival_" + p + ".csv");
    write_survival_csv(sp, curve);
    std::vector<fs::path> files{sp};
    if (h.trajectories > 0) {
        if (p != "persistent" && p != "seo") throw ConfigError("trajectories are available for the discrete walks");
        std::vector<std::vector<int>> tr(h.trajectories);
        for (int i = 0; i < h.trajectories; ++i) {
            Rng rng(c.seed, 1, static_cast<std::uint32_t>(i), 31);
            tr[i] = p == "persistent" ? persistent_walk_trajectory(h.N, h.r, h.cutoff, rng)
                                      : seo_walk_trajectory(h.N, h.r, h.cutoff, rng);
        }
        const auto tp = dir / ("trajectories_" + p + ".csv");
        write_trajectories_csv(tp, tr);
        files.push_back(tp);
    }
    json j;
    j["process"] = p;
    j["replicates"] = h.reps;
    j["grid_points"] = grid.size();
    j["files"] = files_json(files);
    return j;
}

struct LaplaceOpts {
    std::string lambda = "1,2,4,8,16,32,64,128,256,512";
    bool table = false;
    bool curves = false;
    int tpoints = 200;
    double tmin = 1e-3;
    double tmax = 3000.0;
    bool fgrid = false;
    int fgrid_n = 101;
};

json run_laplace(const LaplaceOpts& l, const Common& c) {
    const auto lambdas = parse_list(l.lambda, "lambda");
    for (double x : lambdas)
        if (!(x >= 1.0)) throw ConfigError("C(Lambda) needs Lambda >= 1");
    if (l.tpoints < 2 || !(l.tmin > 0.0) || !(l.tmax > l.tmin)) throw ConfigError("bad t-grid");
    const auto dir = out_dir(c, "laplace");
    std::vector<fs::path> files;
    json table = json::array();
    std::ofstream curves;
    if (l.curves) {
        files.push_back(dir / "c_curves.csv");
        curves.open(files.back());
        curves << "lambda,t,C\n";
    }
    for (double L : lambdas) {
        const auto e = estimate_C(L, l.tpoints, l.tmin, l.tmax);
        table.push_back({{"lambda", L}, {"C", e.sup}, {"t_at_sup", e.t_at_sup}, {"analytic_bound", c_analytic_bound(L)}});
        if (l.curves)
            for (std::size_t i = 0; i < e.t.size(); ++i) curves << fmt::format("{},{},{}\n", L, e.t[i], e.c[i]);
    }
    if (l.table || !l.curves) {
        files.push_back(dir / "c_table.json");
        write_json(files.back(), table);
    }
    if (l.fgrid) {
        files.push_back(dir / "f_magnitude.csv");
        std::ofstream f(files.back());
        f << "lambda,re,im,abs_F\n";
        for (double L : lambdas) {
            const double lo = -1.0 / (L + std::sqrt(2.0));
            for (int a = 0; a < l.fgrid_n; ++a)
                for (int b = 0; b < l.fgrid_n; ++b) {
                    const double re = lo + (1.0 - lo) * a / (l.fgrid_n - 1);
                    const double im = -10.0 + 20.0 * b / (l.fgrid_n - 1);
                    double v;
                    try {
                        v = std::abs(eval_F(cplx(re, im), L));
                    } catch (const DomainError&) {
                        v = std::numeric_limits<double>::quiet_NaN();
                    }
                    f << fmt::format("{},{},{},{}\n", L, re, im, v);
                }
        }
    }
    json j;
    j["table"] = table;
    j["files"] = files_json(files);
    return j;
}

// ---- ising-validate / diagnose ----------------------------------------------

json run_ising(IsingValidateOptions o, const std::string& init, const Common& c) {
    o.init = parse_ising_init(init);
    o.seed = c.seed;
    const auto v = ising_validate(o);
    const auto dir = out_dir(c, "ising_validate");
    const auto p = dir / ("ising_tv_" + init + ".csv");
    std::ofstream f(p);
    if (!f) throw std::runtime_error("cannot write " + p.string());
    f << "t,empirical_tv,bound,noise_floor,noise_sd\n";
    for (std::size_t i = 0; i < v.t.size(); ++i)
        f << fmt::format("{},{},{},{},{}\n", v.t[i], v.tv[i], v.bound[i], v.floor.mean, v.floor.sd);
    json j;
    j["schedule"] = v.schedule.betas();
    j["lambda_hat"] = v.lambda_hat;
    j["lambda_tuning"] = v.lambda_tuning;
    j["r_hat"] = v.r_hat;
    j["rejection"] = v.rejection;
    j["noise_floor"] = {{"mean", v.floor.mean}, {"sd", v.floor.sd}, {"reps", v.floor.reps}};
    j["init"] = init;
    j["replicas"] = o.replicas;
    j["files"] = files_json({p});
    return j;
}

json run_diagnose(const std::string& input, const std::string& prefix, double burn_in, const Common& c) {
    (void)c;
    const auto tr = import_run(input, prefix);
    json j;
    j["scheme"] = to_string(tr.scheme);
    j["n_pairs"] = tr.n_pairs;
    j["iterations"] = tr.iterations;
    const auto st = rejection_rates(tr, burn_in);
    j["rejection"] = nan_to_null(st.rejection);
    if (st.complete()) j["lambda_hat"] = st.lambda_hat();
    if (tr.has_indices()) j["restarts"] = restart_count(tr);
    json ac = json::array();
    for (int ch = 0; ch < tr.chains(); ++ch) {
        try {
            const auto e = energy_trace(tr, ch, burn_in);
            const double rho = lag1_energy_autocorr(e);
            const double band = 3.0 / std::sqrt(static_cast<double>(e.values.size() - e.burn_in));
            ac.push_back({{"chain", ch}, {"lag1", rho}, {"band", band}});
        } catch (const std::exception& ex) {
            ac.push_back({{"chain", ch}, {"lag1", nullptr}, {"note", ex.what()}});
        }
    }
    j["lag1_energy_autocorr"] = ac;
    j["burn_in_fraction"] = burn_in;
    return j;
}

void add_model_opts(CLI::App* s, ModelOpts& m) {
    s->add_option("--model", m.model, "ising, bimodal, gaussian-shift or disjoint");
    s->add_option("--scheme", m.scheme, "nrpt or rpt");
    s->add_option("--N", m.N, "number of adjacent pairs (chains - 1)");
    s->add_option("--iters", m.iters, "iterations");
    s->add_option("--schedule", m.schedule, "'uniform' or comma-separated betas");
    s->add_option("--explorer", m.explorer, "default or ideal");
    s->add_option("--mu", m.mu, "mean shift of the gaussian-shift model");
    s->add_option("--burn-in", m.burn_in, "fraction of iterations discarded by statistics");
}

void emit_error(const std::string& type, const std::string& msg) {
    json e;
    e["error"] = {{"type", type}, {"message", msg}};
    std::cerr << e.dump() << std::endl;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"parallel tempering laboratory"};
    app.require_subcommand(1);
    app.fallthrough();
    Common common;
    app.add_option("--config", common.config, "JSON file with option values; flags take precedence");
    app.add_option("--threads", common.threads, "worker threads (0 = hardware)");
    app.add_option("--seed", common.seed, "master seed");
    app.add_option("--out", common.out, "output directory (default $PTLAB_OUT_DIR or ./ptlab_out)");

    ModelOpts sample_m, tune_m, gcb_m;
    TuneOpts tune_t, gcb_t;
    gcb_t.rounds = 3;
    BoundsOpts bounds;
    HittingOpts hitting;
    LaplaceOpts laplace;
    IsingValidateOptions ising;
    std::string ising_init = "all-minus";
    std::string diag_input, diag_prefix;
    double diag_burn = 0.2;

    auto* sample = app.add_subcommand("sample", "run PT and export traces");
    add_model_opts(sample, sample_m);

    auto* tune = app.add_subcommand("tune", "tune an annealing schedule over rounds");
    add_model_opts(tune, tune_m);
    tune->add_option("--rounds", tune_t.rounds, "tuning rounds R");
    tune->add_option("--base-iters", tune_t.base_iters, "round r runs base * 2^r iterations");
    tune->add_option("--replicas", tune_t.replicas, "runs pooled per round");

    auto* gcb = app.add_subcommand("gcb", "estimate the global communication barrier");
    add_model_opts(gcb, gcb_m);
    gcb->add_option("--rounds", gcb_t.rounds, "tuning rounds R");
    gcb->add_option("--base-iters", gcb_t.base_iters, "round r runs base * 2^r iterations");
    gcb->add_option("--replicas", gcb_t.replicas, "runs pooled per round");
    gcb->add_flag("--quadrature", gcb_t.quadrature, "add the direct quadrature estimate");
    gcb->add_option("--nodes", gcb_t.nodes, "quadrature nodes");
    gcb->add_option("--pairs", gcb_t.pairs, "quadrature pairs per node");

    auto* bnd = app.add_subcommand("bounds", "exact hitting tails and TV bounds");
    bnd->add_option("--scheme", bounds.scheme, "nrpt, rpt or both");
    bnd->add_option("--N", bounds.N, "number of adjacent pairs");
    bnd->add_option("--r", bounds.r, "common rejection rate");
    bnd->add_option("--tmax", bounds.tmax, "last time step");
    bnd->add_option("--lambda", bounds.lambda, "add infinite-chain columns for this Lambda");
    bnd->add_option("--C", bounds.C, "constant of the infinite NRPT bound");

    auto* hit = app.add_subcommand("hitting", "Monte Carlo survival curves");
    hit->add_option("--process", hitting.process, "persistent, seo, pdmp or rbm");
    hit->add_option("--N", hitting.N, "walk length");
    hit->add_option("--r", hitting.r, "rejection rate");
    hit->add_option("--lambda", hitting.lambda, "flip rate of the pdmp");
    hit->add_option("--reps", hitting.reps, "replicates");
    hit->add_option("--tmax", hitting.tmax, "end of the survival grid");
    hit->add_option("--tstep", hitting.tstep, "grid spacing");
    hit->add_option("--dt", hitting.dt, "Euler step of the reflected Brownian motion");
    hit->add_option("--trajectories", hitting.trajectories, "also export this many index trajectories");
    hit->add_option("--cutoff", hitting.cutoff, "trajectory length");

    auto* lap = app.add_subcommand("laplace", "C(Lambda, t) by numerical inversion");
    lap->add_option("--lambda", laplace.lambda, "comma-separated Lambda values");
    lap->add_flag("--table", laplace.table, "write the supremum table");
    lap->add_flag("--curves", laplace.curves, "write C(Lambda, t) curves");
    lap->add_option("--tpoints", laplace.tpoints, "log-grid points");
    lap->add_option("--tmin", laplace.tmin, "first grid point");
    lap->add_option("--tmax", laplace.tmax, "last grid point");
    lap->add_flag("--fgrid", laplace.fgrid, "dump |F(z)| on a grid");
    lap->add_option("--fgrid-n", laplace.fgrid_n, "grid points per axis");

    auto* iv = app.add_subcommand("ising-validate", "empirical vs theoretical TV on the 4x4 Ising model");
    iv->add_option("--chains", ising.chains, "number of chains");
    iv->add_option("--iters", ising.iterations, "iterations per instance");
    iv->add_option("--replicas", ising.replicas, "independent PT instances");
    iv->add_option("--init", ising_init, "all-minus or random");
    iv->add_option("--sweeps", ising.sweeps, "Gibbs sweeps per exploration step");
    iv->add_option("--tune-rounds", ising.tune_rounds, "preliminary tuning rounds");
    iv->add_option("--tune-iters", ising.tune_base_iterations, "base budget of the tuning rounds");
    iv->add_option("--burn-in", ising.burn_in_fraction, "burn-in for the rejection estimate");

    auto* dg = app.add_subcommand("diagnose", "statistics of an exported run");
    dg->add_option("--input", diag_input, "directory written by sample")->required();
    dg->add_option("--prefix", diag_prefix, "file prefix");
    dg->add_option("--burn-in", diag_burn, "burn-in fraction");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        emit_error("validation", e.what());
        return 1;
    }

    CLI::App* sub = app.get_subcommands().front();
    try {
        if (!common.config.empty()) apply_config(app, sub, common.config);
        set_thread_count(common.threads);
        json out;
        const std::string name = sub->get_name();
        if (name == "sample")
            out = run_sample(sample_m, common);
        else if (name == "tune")
            out = run_tune(tune_m, tune_t, common, "tune");
        else if (name == "gcb")
            out = run_tune(gcb_m, gcb_t, common, "gcb");
        else if (name == "bounds")
            out = run_bounds(bounds, common);
        else if (name == "hitting")
            out = run_hitting(hitting, common);
        else if (name == "laplace")
            out = run_laplace(laplace, common);
        else if (name == "ising-validate")
            out = run_ising(ising, ising_init, common);
        else if (name == "diagnose")
            out = run_diagnose(diag_input, diag_prefix, diag_burn, common);
        out["subcommand"] = name;
        out["seed"] = common.seed;
        std::cout << out.dump(2) << std::endl;
        return 0;
    } catch (const CLI::ParseError& e) {
        emit_error("validation", e.what());
        return 1;
    } catch (const ConfigError& e) {
        emit_error("validation", e.what());
        return 1;
    } catch (const std::invalid_argument& e) {
        emit_error("validation", e.what());
        return 1;
    } catch (const std::exception& e) {
        emit_error("runtime", e.what());
        return 2;
    }
}

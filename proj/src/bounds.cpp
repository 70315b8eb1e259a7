#include "ptlab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ptlab {

namespace {

void check_walk(int N, double r) {
    if (N < 1) throw ConfigError("index walk needs N >= 1");
    if (!(r >= 0.0 && r < 1.0)) throw ConfigError("rejection rate must lie in [0,1)");
}

double clean(double p) {
    if (p < 1e-300) return 0.0;
    return std::min(1.0, p);
}

}  // namespace

std::vector<double> SparseTransition::dense() const {
    std::vector<double> a(static_cast<std::size_t>(dim) * dim, 0.0);
    for (const auto& e : entries) a[e.row * dim + e.col] += e.value;
    return a;
}

double SparseTransition::at(int row, int col) const {
    double v = 0.0;
    for (const auto& e : entries)
        if (e.row == row - 1 && e.col == col - 1) v += e.value;
    return v;
}

void SparseTransition::propagate(const std::vector<double>& p, std::vector<double>& q) const {
    q.assign(dim, 0.0);
    for (const auto& e : entries) q[e.col] += p[e.row] * e.value;
}

SparseTransition build_transition(Scheme scheme, int N, double r) {
    check_walk(N, r);
    SparseTransition a;
    a.scheme = scheme;
    auto add = [&a](int row, int col, double v) {  // 1-based
        if (v != 0.0) a.entries.push_back({row - 1, col - 1, v});
    };
    if (scheme == Scheme::NRPT) {
        // State 2k+1 is (N-k, +1), state 2k is (N-k+1, -1); state 1 absorbs.
        a.dim = 2 * N + 2;
        add(1, 1, 1.0);
        for (int k = 1; k <= N; ++k) {
            add(2 * k, 2 * k - 1, r);
            add(2 * k, 2 * k + 2, 1.0 - r);
            add(2 * k + 1, 2 * k - 1, 1.0 - r);
            add(2 * k + 1, 2 * k + 2, r);
        }
        add(2 * N + 2, 2 * N + 1, 1.0);
    } else {
        // State i is distance i-1 from the target; state N+1 is the start.
        a.dim = N + 1;
        add(1, 1, 1.0);
        for (int i = 2; i <= N + 1; ++i) {
            add(i, i - 1, 0.5 * (1.0 - r));
            if (i <= N) {
                add(i, i, r);
                add(i, i + 1, 0.5 * (1.0 - r));
            } else {
                add(i, i, 0.5 * (1.0 + r));
            }
        }
    }
    return a;
}

std::vector<double> hitting_tail_table(Scheme scheme, int N, double r, std::int64_t t_max) {
    if (t_max < 0) throw ConfigError("hitting tail: t must be >= 0");
    const auto a = build_transition(scheme, N, r);
    std::vector<double> p(a.dim, 0.0), q;
    p[a.start_state()] = 1.0;
    std::vector<double> tail(static_cast<std::size_t>(t_max) + 1);
    for (std::int64_t t = 0;; ++t) {
        // Surviving mass summed directly keeps precision for tiny tails.
        double alive = 0.0;
        for (int s = 1; s < a.dim; ++s) alive += p[s];
        tail[t] = clean(alive);
        if (t == t_max) break;
        a.propagate(p, q);
        p.swap(q);
    }
    return tail;
}

double hitting_tail(Scheme scheme, int N, double r, std::int64_t t) {
    return hitting_tail_table(scheme, N, r, t).back();
}

double tv_bound_finite(Scheme scheme, int N, double r, std::int64_t t) {
    if (t < 1) throw ConfigError("tv_bound_finite: t must be >= 1");
    return hitting_tail(scheme, N, r, t - 1);
}

double coarse_bound(Scheme scheme, int N, double r, std::int64_t t) {
    check_walk(N, r);
    if (t < 0) throw ConfigError("coarse bound: t must be >= 0");
    if (scheme == Scheme::NRPT) {
        const double fail = 1.0 - std::pow(1.0 - r, 2.0 * N);
        return std::pow(fail, static_cast<double>(t / (2 * N + 1)));
    }
    const double fail = 1.0 - std::pow(0.5 * (1.0 - r), N);
    return std::pow(fail, static_cast<double>(t / N));
}

double pdmp_loose_bound(double lambda, double t) {
    if (!(lambda >= 0.0) || !(t >= 0.0)) throw ConfigError("pdmp bound: Lambda and t must be >= 0");
    const double blocks = std::floor(t / 2.0);
    if (blocks == 0.0) return 1.0;
    return std::pow(-std::expm1(-2.0 * lambda), blocks);
}

double nrpt_infinite_bound(double lambda, double t, double c, double shift) {
    if (!(lambda >= 1.0)) throw ConfigError("infinite NRPT bound requires Lambda >= 1");
    if (!(c >= 0.0)) throw ConfigError("infinite NRPT bound: C must be >= 0");
    return std::min(1.0, c * std::exp(-(t - shift) / (lambda + 2.0)));
}

double rpt_infinite_tail(double t, int k_max) {
    if (!(t >= 0.0)) throw ConfigError("rpt_infinite_tail: t must be >= 0");
    const double pi = std::numbers::pi;
    if (k_max <= 0 && t < 0.5) {
        // Image expansion of the same function; exact at t = 0 and fast for small t.
        if (t == 0.0) return 1.0;
        const double s = std::sqrt(t);
        auto phi = [](double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); };
        double sum = 0.0;
        for (int n = -40; n <= 40; ++n) {
            const double term = phi((2 * n + 1) / s) - phi((2 * n - 1) / s);
            sum += (n % 2 == 0 ? 1.0 : -1.0) * term;
        }
        return std::clamp(sum, 0.0, 1.0);
    }
    const int kmax = k_max > 0 ? k_max : 200;
    double sum = 0.0;
    for (int k = 1; k <= kmax; k += 2) {
        const double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;  // sin(k pi / 2)
        sum += sign * 4.0 / (k * pi) * std::exp(-k * k * pi * pi * t / 8.0);
    }
    return std::clamp(sum, 0.0, 1.0);
}

double rpt_infinite_bound(double t) {
    return 2.0 * std::exp(-std::numbers::pi * std::numbers::pi * t / 8.0);
}

long mixing_time_bound(double c, double rho, double eps) {
    if (!(rho > 0.0 && rho < 1.0)) throw ConfigError("mixing time: rho must lie in (0,1)");
    if (!(c >= 0.0) || !(eps > 0.0)) throw ConfigError("mixing time: need C >= 0 and eps > 0");
    if (c == 0.0) return 0;
    const double t = (std::log(eps) - std::log(c)) / std::log(rho);
    return static_cast<long>(std::ceil(std::max(0.0, t) - 1e-12));
}

std::vector<double> index_position_law(Scheme scheme, int N, double r, int t) {
    check_walk(N, r);
    if (t < 0) throw ConfigError("index law: t must be >= 0");
    if (scheme == Scheme::RPT) {
        std::vector<double> p(N + 1, 0.0), q(N + 1);
        p[0] = 1.0;
        const double move = 0.5 * (1.0 - r);
        for (int s = 0; s < t; ++s) {
            std::fill(q.begin(), q.end(), 0.0);
            for (int i = 0; i <= N; ++i) {
                double stay = 1.0;
                if (i < N) {
                    q[i + 1] += p[i] * move;
                    stay -= move;
                }
                if (i > 0) {
                    q[i - 1] += p[i] * move;
                    stay -= move;
                }
                q[i] += p[i] * stay;
            }
            p.swap(q);
        }
        return p;
    }
    // (i, up) at 2i, (i, down) at 2i+1.
    std::vector<double> p(2 * (N + 1), 0.0), q(p.size());
    p[0] = 1.0;
    for (int s = 0; s < t; ++s) {
        std::fill(q.begin(), q.end(), 0.0);
        for (int i = 0; i <= N; ++i) {
            const double up = p[2 * i], down = p[2 * i + 1];
            if (i < N) {
                q[2 * (i + 1)] += up * (1.0 - r);
                q[2 * i + 1] += up * r;
            } else {
                q[2 * i + 1] += up;
            }
            if (i > 0) {
                q[2 * (i - 1) + 1] += down * (1.0 - r);
                q[2 * i] += down * r;
            } else {
                q[2 * i] += down;
            }
        }
        p.swap(q);
    }
    std::vector<double> law(N + 1);
    for (int i = 0; i <= N; ++i) law[i] = p[2 * i] + p[2 * i + 1];
    return law;
}

}  // namespace ptlab

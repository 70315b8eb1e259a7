#include "ptlab/models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/special_functions/erf.hpp>

namespace ptlab {

namespace {

constexpr double kLog2Pi = 1.8378770664093453;

const std::array<std::int8_t, kIsingStates>& coupling_table() {
    static const auto table = [] {
        std::array<std::int8_t, kIsingStates> t{};
        for (std::size_t s = 0; s < kIsingStates; ++s) {
            int sum = 0;
            for (int site = 0; site < kIsingSites; ++site) {
                const int row = site / kIsingSide, col = site % kIsingSide;
                const int right = row * kIsingSide + (col + 1) % kIsingSide;
                const int down = ((row + 1) % kIsingSide) * kIsingSide + col;
                const int xi = ((s >> site) & 1u) ? 1 : -1;
                const int xr = ((s >> right) & 1u) ? 1 : -1;
                const int xd = ((s >> down) & 1u) ? 1 : -1;
                sum += xi * xr + xi * xd;
            }
            t[s] = static_cast<std::int8_t>(sum);
        }
        return t;
    }();
    return table;
}

double log_normal_pdf(double x, double mean, double var) {
    const double d = x - mean;
    return -0.5 * (kLog2Pi + std::log(var) + d * d / var);
}

double log_sum_exp(double a, double b) {
    const double m = std::max(a, b);
    if (m == -std::numeric_limits<double>::infinity()) return m;
    return m + std::log(std::exp(a - m) + std::exp(b - m));
}

}  // namespace

// ---------------------------------------------------------------------------

int ising_coupling_sum(Spins s) { return coupling_table()[s]; }

int ising_spin(Spins s, int site) { return ((s >> site) & 1u) ? 1 : -1; }

Spins ising_flip(Spins s, int site) { return static_cast<Spins>(s ^ (1u << site)); }

std::array<int, 4> ising_neighbors(int site) {
    const int row = site / kIsingSide, col = site % kIsingSide;
    return {row * kIsingSide + (col + 1) % kIsingSide,
            row * kIsingSide + (col + kIsingSide - 1) % kIsingSide,
            ((row + 1) % kIsingSide) * kIsingSide + col,
            ((row + kIsingSide - 1) % kIsingSide) * kIsingSide + col};
}

std::size_t DiscreteDist::sample(Rng& rng) const {
    const double u = rng.uniform() * cdf.back();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
}

double DiscreteDist::total() const {
    double s = 0.0;
    for (double p : prob) s += p;
    return s;
}

DiscreteDist ising_exact_distribution(double beta) {
    if (!(beta >= 0.0 && beta <= 1.0)) throw ConfigError("ising_exact_distribution: beta outside [0,1]");
    const auto& table = coupling_table();
    const double shift = beta * 32.0;  // largest exponent, for stability
    DiscreteDist d;
    d.prob.resize(kIsingStates);
    double z = 0.0;
    for (std::size_t s = 0; s < kIsingStates; ++s) {
        d.prob[s] = std::exp(beta * table[s] - shift);
        z += d.prob[s];
    }
    d.cdf.resize(kIsingStates);
    double acc = 0.0;
    for (std::size_t s = 0; s < kIsingStates; ++s) {
        d.prob[s] /= z;
        acc += d.prob[s];
        d.cdf[s] = acc;
    }
    d.log_normalizer = std::log(z) + shift;
    return d;
}

double IsingModel::log_reference(const Spins&) const { return -kIsingSites * std::numbers::ln2; }

double IsingModel::log_target(const Spins& x) const { return ising_coupling_sum(x); }

Spins IsingModel::sample_reference(Rng& rng) const { return static_cast<Spins>(rng() >> 48); }

std::shared_ptr<const DiscreteDist> IsingModel::table(double beta) const {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(beta);
    if (it != cache_.end()) return it->second;
    auto d = std::make_shared<const DiscreteDist>(ising_exact_distribution(beta));
    cache_.emplace(beta, d);
    return d;
}

Spins IsingModel::sample_path(double beta, Rng& rng) const {
    return static_cast<Spins>(table(beta)->sample(rng));
}

std::function<Spins(Rng&)> IsingModel::path_sampler(double beta) const {
    auto d = table(beta);
    return [d](Rng& rng) { return static_cast<Spins>(d->sample(rng)); };
}

// ---------------------------------------------------------------------------

double BimodalModel::log_reference(const Vec& x) const {
    return log_normal_pdf(x[0], 0.0, kReferenceVariance);
}

double BimodalModel::log_target(const Vec& x) const {
    return std::log(0.5) + log_sum_exp(log_normal_pdf(x[0], -kMode, 1.0),
                                       log_normal_pdf(x[0], kMode, 1.0));
}

Vec BimodalModel::sample_reference(Rng& rng) const {
    return {std::sqrt(kReferenceVariance) * rng.normal()};
}

Vec BimodalModel::sample_path(double beta, Rng& rng) const {
    if (!(beta >= 0.0 && beta <= 1.0)) throw ConfigError("bimodal: beta outside [0,1]");
    if (beta == 0.0) return sample_reference(rng);
    for (;;) {
        Vec x(1);
        if (rng.uniform() < beta)
            x[0] = (rng.uniform() < 0.5 ? -kMode : kMode) + rng.normal();
        else
            x[0] = std::sqrt(kReferenceVariance) * rng.normal();
        const double l0 = log_reference(x), l1 = log_target(x);
        const double log_f = (1.0 - beta) * l0 + beta * l1;
        const double log_g = log_sum_exp(std::log1p(-beta) + l0, std::log(beta) + l1);
        if (beta == 1.0 || std::log(rng.uniform()) < log_f - log_g) return x;
    }
}

// ---------------------------------------------------------------------------

GaussianPair::Endpoint GaussianPair::make_endpoint(const Eigen::VectorXd& m, const Eigen::MatrixXd& s) {
    Endpoint e;
    e.mean = m;
    e.chol_cov.compute(s);
    if (e.chol_cov.info() != Eigen::Success) throw ConfigError("gaussian_pair: covariance not positive definite");
    e.prec = e.chol_cov.solve(Eigen::MatrixXd::Identity(m.size(), m.size()));
    const Eigen::MatrixXd l = e.chol_cov.matrixL();
    double logdet = 0.0;
    for (int i = 0; i < l.rows(); ++i) logdet += 2.0 * std::log(l(i, i));
    e.log_norm = -0.5 * (m.size() * kLog2Pi + logdet);
    return e;
}

GaussianPair::GaussianPair(Eigen::VectorXd m0, Eigen::MatrixXd s0, Eigen::VectorXd m1, Eigen::MatrixXd s1)
    : m0_(std::move(m0)), m1_(std::move(m1)), s0_(std::move(s0)), s1_(std::move(s1)) {
    const auto d = m0_.size();
    if (d < 1 || m1_.size() != d || s0_.rows() != d || s0_.cols() != d || s1_.rows() != d || s1_.cols() != d)
        throw ConfigError("gaussian_pair: inconsistent dimensions");
    e0_ = make_endpoint(m0_, s0_);
    e1_ = make_endpoint(m1_, s1_);
}

GaussianPair GaussianPair::mean_shift(double mu) {
    Eigen::VectorXd m0(1), m1(1);
    m0 << 0.0;
    m1 << mu;
    return GaussianPair(m0, Eigen::MatrixXd::Identity(1, 1), m1, Eigen::MatrixXd::Identity(1, 1));
}

GaussianPair GaussianPair::equicorrelated(int d, double rho, double mean) {
    if (d < 1) throw ConfigError("gaussian_pair: d must be positive");
    if (!(rho >= 0.0 && rho < 1.0)) throw ConfigError("gaussian_pair: rho outside [0,1)");
    Eigen::MatrixXd s = Eigen::MatrixXd::Constant(d, d, rho);
    s.diagonal().setOnes();
    return GaussianPair(Eigen::VectorXd::Zero(d), Eigen::MatrixXd::Identity(d, d),
                        Eigen::VectorXd::Constant(d, mean), s);
}

GaussianPair GaussianPair::affine(double a, double b) const {
    if (a == 0.0) throw ConfigError("gaussian_pair: affine map must be invertible");
    const Eigen::VectorXd shift = Eigen::VectorXd::Constant(m0_.size(), b);
    return GaussianPair(a * m0_ + shift, a * a * s0_, a * m1_ + shift, a * a * s1_);
}

double GaussianPair::log_density(const Endpoint& e, const Vec& x) {
    const Eigen::Map<const Eigen::VectorXd> v(x.data(), static_cast<Eigen::Index>(x.size()));
    const Eigen::VectorXd d = v - e.mean;
    return e.log_norm - 0.5 * d.dot(e.prec * d);
}

double GaussianPair::log_reference(const Vec& x) const { return log_density(e0_, x); }

double GaussianPair::log_target(const Vec& x) const { return log_density(e1_, x); }

Vec GaussianPair::sample_reference(Rng& rng) const { return path_sampler(0.0)(rng); }

std::pair<Eigen::VectorXd, Eigen::MatrixXd> GaussianPair::path_moments(double beta) const {
    if (!(beta >= 0.0 && beta <= 1.0)) throw ConfigError("gaussian_pair: beta outside [0,1]");
    const Eigen::MatrixXd prec = (1.0 - beta) * e0_.prec + beta * e1_.prec;
    const Eigen::LLT<Eigen::MatrixXd> llt(prec);
    const Eigen::MatrixXd cov = llt.solve(Eigen::MatrixXd::Identity(prec.rows(), prec.cols()));
    const Eigen::VectorXd mean = cov * ((1.0 - beta) * e0_.prec * m0_ + beta * e1_.prec * m1_);
    return {mean, cov};
}

std::function<Vec(Rng&)> GaussianPair::path_sampler(double beta) const {
    auto [mean, cov] = path_moments(beta);
    const Eigen::MatrixXd l = Eigen::LLT<Eigen::MatrixXd>(cov).matrixL();
    return [mean = std::move(mean), l](Rng& rng) {
        Eigen::VectorXd z(mean.size());
        for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = rng.normal();
        const Eigen::VectorXd x = mean + l * z;
        return Vec(x.data(), x.data() + x.size());
    };
}

Vec GaussianPair::sample_path(double beta, Rng& rng) const { return path_sampler(beta)(rng); }

// ---------------------------------------------------------------------------

double sample_truncated_normal(double mean, double sd, double lo, double hi, Rng& rng) {
    if (!(sd > 0.0) || !(hi > lo)) throw ConfigError("truncated normal: bad parameters");
    const double za = (lo - mean) / sd, zb = (hi - mean) / sd;
    const double u = rng.uniform();
    double z;
    if (za > 0.0) {
        // Upper tail: invert the survival function.
        const double qa = 0.5 * std::erfc(za / std::numbers::sqrt2);
        const double qb = 0.5 * std::erfc(zb / std::numbers::sqrt2);
        const double q = qb + u * (qa - qb);
        z = std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * q);
    } else {
        const double pa = 0.5 * std::erfc(-za / std::numbers::sqrt2);
        const double pb = 0.5 * std::erfc(-zb / std::numbers::sqrt2);
        const double p = pa + u * (pb - pa);
        z = -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
    }
    return std::clamp(mean + sd * z, lo, hi);
}

namespace {
constexpr double kModeLo[2] = {-15.0, 5.0};
constexpr double kModeHi[2] = {-5.0, 15.0};
constexpr double kModeCentre[2] = {-10.0, 10.0};

bool in_modes(double x) { return (x >= -15.0 && x <= -5.0) || (x >= 5.0 && x <= 15.0); }
}  // namespace

double DisjointModesModel::log_reference(const Vec& x) const {
    return in_modes(x[0]) ? -std::log(20.0) : -std::numeric_limits<double>::infinity();
}

double DisjointModesModel::log_target(const Vec& x) const {
    if (!in_modes(x[0])) return -std::numeric_limits<double>::infinity();
    return std::log(0.5) + log_normal_pdf(x[0], kModeCentre[mode_of(x)], 1.0);
}

Vec DisjointModesModel::sample_reference(Rng& rng) const {
    const int m = rng.uniform() < 0.5 ? 0 : 1;
    return {kModeLo[m] + 10.0 * rng.uniform()};
}

Vec DisjointModesModel::mode_local_step(const Vec& x, double beta, Rng& rng) const {
    const int m = mode_of(x);
    if (beta == 0.0) return {kModeLo[m] + 10.0 * rng.uniform()};
    return {sample_truncated_normal(kModeCentre[m], 1.0 / std::sqrt(beta), kModeLo[m], kModeHi[m], rng)};
}

ThinShellModel::ThinShellModel(double a) : a_(a) {
    if (!(a > 0.0)) throw ConfigError("thin_shell: a must be positive");
}

double ThinShellModel::log_reference(const Vec& x) const {
    if (x[0] < 0.0 || x[0] > 1.0) return -std::numeric_limits<double>::infinity();
    return log_normal_pdf(x[1], 0.0, 1.0 + a_ * a_ / 3.0);
}

double ThinShellModel::log_target(const Vec& x) const {
    if (x[0] < 0.0 || x[0] > 1.0) return -std::numeric_limits<double>::infinity();
    return log_normal_pdf(x[1], a_ * x[0], 1.0);
}

Vec ThinShellModel::sample_reference(Rng& rng) const {
    return {rng.uniform(), std::sqrt(1.0 + a_ * a_ / 3.0) * rng.normal()};
}

Vec ThinShellModel::sample_target(Rng& rng) const {
    const double x1 = rng.uniform();
    return {x1, a_ * x1 + rng.normal()};
}

Vec ThinShellModel::gibbs_step(const Vec& x, Rng& rng) const {
    const double x2 = a_ * x[0] + rng.normal();
    const double x1 = sample_truncated_normal(x2 / a_, 1.0 / a_, 0.0, 1.0, rng);
    return {x1, x2};
}

}  // namespace ptlab

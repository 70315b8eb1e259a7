#include "ptlab/gcb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/distributions/normal.hpp>

namespace ptlab {

BarrierFn::BarrierFn(std::vector<double> knots, std::vector<double> values)
    : knots_(std::move(knots)), values_(std::move(values)) {
    if (knots_.size() < 2 || knots_.size() != values_.size())
        throw ConfigError("barrier needs matching knots and values (at least two)");
    if (knots_.front() != 0.0 || knots_.back() != 1.0) throw ConfigError("barrier knots must span [0, 1]");
    if (values_.front() != 0.0) throw ConfigError("barrier must vanish at beta = 0");
    for (std::size_t i = 1; i < knots_.size(); ++i) {
        if (!(knots_[i] > knots_[i - 1])) throw ConfigError("barrier knots must increase strictly");
        if (!(values_[i] >= values_[i - 1]) || !std::isfinite(values_[i]))
            throw ConfigError("barrier values must be finite and non-decreasing");
    }
}

BarrierFn BarrierFn::from_rejections(const Schedule& schedule, const std::vector<double>& rejection) {
    if (rejection.size() != static_cast<std::size_t>(schedule.n()))
        throw ConfigError("one rejection rate per adjacent pair expected");
    std::vector<double> cum(schedule.size(), 0.0);
    for (std::size_t n = 0; n < rejection.size(); ++n) {
        if (std::isnan(rejection[n])) throw ConfigError("missing swap statistics for pair " + std::to_string(n));
        if (rejection[n] < 0.0 || rejection[n] > 1.0) throw ConfigError("rejection rate outside [0, 1]");
        cum[n + 1] = cum[n] + rejection[n];
    }
    return BarrierFn(schedule.betas(), std::move(cum));
}

double BarrierFn::operator()(double beta) const {
    if (!(beta >= 0.0 && beta <= 1.0)) throw ConfigError("barrier evaluated outside [0, 1]");
    const auto it = std::upper_bound(knots_.begin(), knots_.end(), beta);
    if (it == knots_.end()) return values_.back();
    const std::size_t j = it - knots_.begin();
    const double u = (beta - knots_[j - 1]) / (knots_[j] - knots_[j - 1]);
    return values_[j - 1] + u * (values_[j] - values_[j - 1]);
}

double BarrierFn::inverse(double level) const {
    if (!(level >= 0.0 && level <= total())) throw ConfigError("barrier level outside [0, Lambda]");
    if (level == 0.0) return 0.0;
    const auto it = std::lower_bound(values_.begin(), values_.end(), level);
    const std::size_t j = it - values_.begin();
    if (values_[j] == level) return knots_[j];
    const double u = (level - values_[j - 1]) / (values_[j] - values_[j - 1]);
    return knots_[j - 1] + u * (knots_[j] - knots_[j - 1]);
}

GcbEstimate estimate_gcb(const SwapStats& stats, const Schedule& schedule) {
    if (!stats.complete()) throw ConfigError("swap statistics missing for at least one pair");
    GcbEstimate e;
    e.rejection = stats.rejection;
    e.barrier = BarrierFn::from_rejections(schedule, stats.rejection);
    e.lambda = e.barrier.total();
    return e;
}

GcbEstimate estimate_gcb(const TraceCore& trace, const Schedule& schedule, double burn_in_fraction) {
    return estimate_gcb(rejection_rates(trace, burn_in_fraction), schedule);
}

Schedule tune_schedule(const BarrierFn& barrier, int n_pairs) {
    if (n_pairs < 1) throw ConfigError("schedule needs N >= 1");
    const double L = barrier.total();
    if (!(L > 0.0)) return Schedule::uniform(n_pairs);
    std::vector<double> b(n_pairs + 1);
    b[0] = 0.0;
    b[n_pairs] = 1.0;
    for (int n = 1; n < n_pairs; ++n) b[n] = barrier.inverse(L * n / n_pairs);
    return Schedule(std::move(b));
}

double gcb_tv_bound(const std::vector<double>& tv_values) {
    double s = 0.0;
    for (double tv : tv_values) {
        if (!(tv >= 0.0 && tv <= 1.0)) throw ConfigError("TV values must lie in [0, 1]");
        if (tv == 1.0) throw DomainError("TV = 1: endpoints not mutually absolutely continuous");
        s += tv / (1.0 - tv);
    }
    return 2.0 * s;
}

double gcb_kl_bound(double kl_10, double kl_01) {
    if (!(kl_10 >= 0.0) || !(kl_01 >= 0.0)) throw ConfigError("KL divergences must be non-negative");
    // g/(1-g) = 2 e^x - 1, finite for finite x.
    const double kl = std::min(kl_10, kl_01);
    if (std::isinf(kl)) return std::numeric_limits<double>::infinity();
    return 2.0 * (2.0 * std::exp(kl) - 1.0);
}

double gcb_product_bound(const std::vector<double>& component_gcbs) {
    double s = 0.0;
    for (double l : component_gcbs) s += l;
    return s;
}

double gcb_gaussian_submanifold_bound(double rho, double m) {
    if (!(rho >= 0.0) || !(rho < 1.0)) throw DomainError("rho must lie in [0, 1)");
    if (!(m >= 0.0)) throw ConfigError("m must be non-negative");
    return std::sqrt(-0.5 * std::log1p(-rho) + 0.5 * ((1.0 + m) / (1.0 - rho) + 1.0));
}

double gaussian_tv_mean_shift(double mu) {
    const boost::math::normal_distribution<double> z;
    return 2.0 * boost::math::cdf(z, std::abs(mu) / 2.0) - 1.0;
}

double gaussian_kl(const Eigen::VectorXd& m_a, const Eigen::MatrixXd& s_a, const Eigen::VectorXd& m_b,
                   const Eigen::MatrixXd& s_b) {
    const auto d = m_a.size();
    if (s_a.rows() != d || s_b.rows() != d || m_b.size() != d) throw ConfigError("gaussian_kl: size mismatch");
    const Eigen::LLT<Eigen::MatrixXd> la(s_a), lb(s_b);
    if (la.info() != Eigen::Success || lb.info() != Eigen::Success)
        throw DomainError("gaussian_kl: covariance not positive definite");
    const Eigen::MatrixXd sbi_sa = lb.solve(s_a);
    const Eigen::VectorXd dm = m_b - m_a;
    const double logdet_a = 2.0 * la.matrixLLT().diagonal().array().log().sum();
    const double logdet_b = 2.0 * lb.matrixLLT().diagonal().array().log().sum();
    return 0.5 * (sbi_sa.trace() + dm.dot(lb.solve(dm)) - static_cast<double>(d) + logdet_b - logdet_a);
}

}  // namespace ptlab

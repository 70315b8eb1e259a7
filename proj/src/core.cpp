#include "ptlab/core.hpp"

#include <algorithm>
#include <sstream>

namespace ptlab {

Schedule::Schedule(std::vector<double> betas) : betas_(std::move(betas)) {
    if (betas_.size() < 2) throw ConfigError("schedule needs at least two points");
    if (betas_.front() != 0.0 || betas_.back() != 1.0)
        throw ConfigError("schedule must start at 0 and end at 1");
    for (std::size_t i = 1; i < betas_.size(); ++i) {
        if (!(betas_[i] > betas_[i - 1])) {
            std::ostringstream msg;
            msg << "schedule not strictly increasing at index " << i;
            throw ConfigError(msg.str());
        }
    }
}

Schedule Schedule::uniform(int n_pairs) {
    if (n_pairs < 1) throw ConfigError("schedule needs N >= 1");
    std::vector<double> b(n_pairs + 1);
    for (int i = 0; i <= n_pairs; ++i) b[i] = static_cast<double>(i) / n_pairs;
    b.back() = 1.0;
    return Schedule(std::move(b));
}

double swap_acceptance(double beta_lo, double beta_hi, double v_lo, double v_hi) {
    if (std::isnan(beta_lo) || std::isnan(beta_hi) || std::isnan(v_lo) || std::isnan(v_hi))
        throw DomainError("swap_acceptance: NaN input");
    if (v_lo == v_hi) return 1.0;
    const double gap = beta_hi - beta_lo;
    if (gap == 0.0) return 1.0;
    const double expo = gap * (v_hi - v_lo);
    if (expo >= 0.0) return 1.0;
    return std::exp(expo);
}

}  // namespace ptlab

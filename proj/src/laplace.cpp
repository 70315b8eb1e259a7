#include "ptlab/laplace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <sstream>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ptlab/error.hpp"
#include "ptlab/parallel.hpp"

namespace ptlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;

void check_lambda(double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ConfigError("Lambda must be positive and finite");
}

void check_hypotheses(double lambda, double gamma, double eps) {
    if (!(lambda >= 1.0)) throw ConfigError("Lambda >= 1 required");
    if (!(gamma >= 1.0 / (4.0 * lambda) && gamma < 1.0 / (lambda + kSqrt2)))
        throw ConfigError("gamma must satisfy 1/(4 Lambda) <= gamma < 1/(Lambda + sqrt 2)");
    if (!(eps > 0.0 && eps <= 1.0 / (136.0 * lambda)))
        throw ConfigError("eps must satisfy 0 < eps <= 1/(136 Lambda)");
}

// Adaptive Gauss-Kronrod on [a, b] with an absolute error target. Roundoff
// in the integrand makes relative targets unreachable where it is tiny.
template <class Fn>
double integrate_panel(const Fn& f, double a, double b, double abs_tol, int depth = 0) {
    double err = 0.0;
    double l1 = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 0, 0.0, &err, &l1);
    if (err <= abs_tol || err <= 1e-12 * l1 || depth >= 24) return v;
    const double m = 0.5 * (a + b);
    return integrate_panel(f, a, m, 0.5 * abs_tol, depth + 1) +
           integrate_panel(f, m, b, 0.5 * abs_tol, depth + 1);
}

}  // namespace

cplx eval_r(cplx z, double lambda) {
    return std::sqrt(z * (z + 2.0 * lambda));
}

cplx sinhc(cplx w) {
    if (std::abs(w) < 1e-4) {
        const cplx w2 = w * w;
        return 1.0 + w2 / 6.0 * (1.0 + w2 / 20.0 * (1.0 + w2 / 42.0));
    }
    return std::sinh(w) / w;
}

cplx eval_D(double x, cplx z, double lambda) {
    if (!(x >= 0.0 && x <= 1.0)) throw ConfigError("eval_D: x must lie in [0, 1]");
    check_lambda(lambda);
    const cplx w = x * eval_r(z, lambda);
    return std::cosh(w) + z * x * sinhc(w);
}

cplx eval_F(cplx z, double lambda) {
    if (z == cplx(0.0, 0.0)) throw DomainError("eval_F: z = 0");
    const cplx r = eval_r(z, lambda);
    if (r.real() > 20.0) {
        // cosh(r) and e^z overflow together; factor e^r out of D.
        const cplx q = std::exp(-2.0 * r);
        const cplx scaled = 0.5 * ((1.0 + q) + z * (1.0 - q) / r);
        return (1.0 - std::exp(z - r) / scaled) / z;
    }
    const cplx d = eval_D(1.0, z, lambda);
    if (std::abs(d) < 1e-14) throw DomainError("eval_F: D(1, z) vanishes");
    return (d - std::exp(z)) / (z * d);
}

double D_real_axis(double gamma, double lambda) {
    if (!(gamma > 0.0 && gamma < 2.0 * lambda)) throw ConfigError("D_real_axis: need 0 < gamma < 2 Lambda");
    const double s = std::sqrt(gamma * (2.0 * lambda - gamma));
    return std::cos(s) - gamma / s * std::sin(s);
}

double pole_margin_check(double lambda, double gamma, double eps, int grid) {
    check_hypotheses(lambda, gamma, eps);
    if (grid < 2) throw ConfigError("pole_margin_check: grid needs at least 2 points");
    double m = std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid; ++i) {
        const double x = eps * i / (grid - 1);
        m = std::min(m, std::abs(eval_D(1.0, cplx(-gamma, x), lambda)));
    }
    return m;
}

int count_zeros_rectangle(double lambda, double re_lo, double re_hi, double im_lo, double im_hi) {
    if (!(re_lo < re_hi && im_lo < im_hi)) throw ConfigError("count_zeros_rectangle: empty rectangle");
    const cplx corners[5] = {{re_lo, im_lo}, {re_hi, im_lo}, {re_hi, im_hi}, {re_lo, im_hi}, {re_lo, im_lo}};
    auto D = [&](cplx z) { return eval_D(1.0, z, lambda); };

    double total = 0.0;
    for (int side = 0; side < 4; ++side) {
        const cplx a = corners[side];
        const cplx b = corners[side + 1];
        // Bisect each step until the argument change is small.
        const int base = 2000;
        for (int k = 0; k < base; ++k) {
            std::vector<std::pair<double, double>> work{
                {static_cast<double>(k) / base, static_cast<double>(k + 1) / base}};
            while (!work.empty()) {
                auto [u, v] = work.back();
                work.pop_back();
                const cplx du = D(a + (b - a) * u);
                const cplx dv = D(a + (b - a) * v);
                if (std::abs(du) == 0.0 || std::abs(dv) == 0.0)
                    throw DomainError("count_zeros_rectangle: zero on the contour");
                const double darg = std::arg(dv / du);
                if (std::abs(darg) > 0.5 && v - u > 1e-12) {
                    const double mid = 0.5 * (u + v);
                    work.emplace_back(mid, v);
                    work.emplace_back(u, mid);
                    continue;
                }
                total += darg;
            }
        }
    }
    return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

namespace {

// Line integral (1/pi) int_0^inf Re(e^{ixt} G(c+ix)) dx of the remainder G
// below, together with the constants of the split.
struct InversionParts {
    double a = 0.0;         // coefficient of e^{-Lambda} / (z+1)^2
    double integral = 0.0;  // already divided by pi
};

InversionParts inversion_parts(double lambda, double c, double t, const InversionOptions& opt) {
    check_lambda(lambda);
    if (!(t > 0.0) || !std::isfinite(t)) throw ConfigError("inversion needs t > 0");
    if (!(c > -1.0 / (lambda + kSqrt2)) || c == 0.0 || !(c < 1e3))
        throw ConfigError("abscissa must satisfy -1/(Lambda + sqrt 2) < c, c != 0");

    // F = 1/z - E with E = e^z / (z D). E is split into its leading
    // large-|z| terms, whose inverses are known, and a remainder G that
    // decays like 1/x^2 (with a small oscillating part).
    const double el = std::exp(-lambda);
    const double a = 0.5 * (lambda * lambda + lambda + 2.0);
    auto G = [&](double x) {
        const cplx z(c, x);
        const cplx d = eval_D(1.0, z, lambda);
        const cplx zp1 = z + 1.0;
        return std::exp(z) / (z * d) - el / zp1 - a * el / (zp1 * zp1);
    };
    auto h = [&](double x) { return std::real(std::exp(cplx(0.0, x * t)) * G(x)); };

    const double w = std::min(opt.max_panel, kPi / (4.0 * t));
    double sum = 0.0;
    double x = 0.0;
    cplx g_prev = G(0.0);
    for (;;) {
        const double b = x + w;
        sum += integrate_panel(h, x, b, 0.1 * opt.tol * w);
        x = b;
        const cplx g = G(x);
        const double gm = std::max(std::abs(g), std::abs(G(x - 0.5 * w)));
        // 1/x^2 envelope bound vs. one integration by parts.
        const double plain = 2.0 * gm * x;
        const double dg = std::abs(g - g_prev) / w;
        const double ibp = 2.0 * dg / (t * t);
        g_prev = g;
        if (x >= 1.0 && std::min(plain, ibp) < opt.tol) {
            if (ibp < plain) sum += std::real(cplx(0.0, 1.0) * g * std::exp(cplx(0.0, x * t))) / t;
            break;
        }
        if (x >= opt.x_max) {
            std::ostringstream os;
            os << "Bromwich integral did not converge: Lambda=" << lambda << " c=" << c << " t=" << t
               << " reached x=" << x << " with tail estimate " << std::min(plain, ibp) << " > tol " << opt.tol;
            throw ConvergenceError(os.str());
        }
    }
    return {a, sum / kPi};
}

}  // namespace

double bromwich_inverse(double lambda, double c, double t, const InversionOptions& opt) {
    const auto p = inversion_parts(lambda, c, t, opt);
    const double heaviside = c > 0.0 ? 1.0 : 0.0;
    return heaviside - std::exp(-lambda - t) * (1.0 + p.a * t) - std::exp(c * t) * p.integral;
}

double estimate_C_t(double lambda, double t, const InversionOptions& opt) {
    if (!(lambda >= 1.0)) throw ConfigError("estimate_C: Lambda >= 1 required");
    const double gamma = 1.0 / (lambda + 2.0);
    const auto p = inversion_parts(lambda, -gamma, t, opt);
    // The e^{gamma t} prefactor cancels the e^{ct} of the line integral.
    return -std::exp(-lambda + (gamma - 1.0) * t) * (1.0 + p.a * t) - p.integral;
}

double estimate_C_t_direct(double lambda, double t, double R) {
    if (!(lambda >= 1.0)) throw ConfigError("estimate_C: Lambda >= 1 required");
    if (!(t > 0.0)) throw ConfigError("estimate_C: t > 0 required");
    const double gamma = 1.0 / (lambda + 2.0);
    auto F = [&](double x) { return eval_F(cplx(-gamma, x), lambda); };
    auto h = [&](double x) { return std::real(std::exp(cplx(0.0, x * t)) * F(x)); };
    const double w = std::min(0.25, kPi / (4.0 * t));
    double sum = 0.0;
    for (double x = 0.0; x < R; x += w) sum += integrate_panel(h, x, std::min(R, x + w), 1e-10 * w);
    // First-order tail of the oscillatory 1/x integrand.
    sum += std::real(cplx(0.0, 1.0) * F(R) * std::exp(cplx(0.0, R * t))) / t;
    return sum / kPi;
}

CEstimate estimate_C(double lambda, int n, double t_lo, double t_hi, const InversionOptions& opt) {
    if (n < 2 || !(t_lo > 0.0) || !(t_hi > t_lo)) throw ConfigError("estimate_C: bad t-grid");
    CEstimate out;
    out.t.resize(n);
    out.c.resize(n);
    for (int i = 0; i < n; ++i)
        out.t[i] = std::exp(std::log(t_lo) + (std::log(t_hi) - std::log(t_lo)) * i / (n - 1));
    parallel_for(n, [&](std::size_t i) { out.c[i] = estimate_C_t(lambda, out.t[i], opt); });
    const auto it = std::max_element(out.c.begin(), out.c.end());
    out.sup = *it;
    out.t_at_sup = out.t[it - out.c.begin()];
    return out;
}

double c_analytic_bound(double lambda, double gamma, double B, double eps) {
    check_hypotheses(lambda, gamma, eps);
    if (!(B >= std::sqrt(6.0) * (lambda + 1.0) * (1.0 - 1e-12)))
        throw ConfigError("B must be at least sqrt(6)(Lambda + 1)");
    const double k = (lambda - gamma) *
                     (std::sqrt(1.0 + B * B / (4.0 * lambda * lambda)) - B / (2.0 * lambda));
    auto bracket = [](double s) {
        const double rs = std::sqrt(s);
        return -rs * std::log1p(-std::exp(-rs)) + 2.0 * std::exp(-rs);
    };
    const double eg = std::exp(-gamma);
    const double sum = (1.0 + std::exp(-lambda)) * (2.0 + kPi) + 15.0 * eps * eg / gamma +
                       765.0 * lambda * std::exp(-0.75 * lambda) / B + 4.0 * eg / k * bracket(k) +
                       4.0 * eg / (gamma * k) * bracket(eps * k);
    return sum / kPi;
}

double c_analytic_bound(double lambda) {
    if (!(lambda >= 1.0)) throw ConfigError("Lambda >= 1 required");
    return c_analytic_bound(lambda, 1.0 / (lambda + 2.0), std::sqrt(6.0) * (lambda + 1.0),
                            1.0 / (136.0 * lambda));
}

}  // namespace ptlab

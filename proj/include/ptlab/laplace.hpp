#pragma once

#include <complex>
#include <vector>

namespace ptlab {

using cplx = std::complex<double>;

// r(z) = sqrt((z + Lambda)^2 - Lambda^2) = sqrt(z (z + 2 Lambda)), principal branch.
cplx eval_r(cplx z, double lambda);

// sinh(w) / w with a short series near 0.
cplx sinhc(cplx w);

// D(x,z) = cosh(x r) + z x sinhc(x r). Only even powers of r appear, so the
// square-root branch does not matter.
cplx eval_D(double x, cplx z, double lambda);

// F(z) = (D(1,z) - e^z) / (z D(1,z)), the Laplace transform of
// t -> Pr(tau_inf > t + 1).
cplx eval_F(cplx z, double lambda);

// Closed form of D(1, -gamma) for 0 < gamma < 2 Lambda.
double D_real_axis(double gamma, double lambda);

// Grid minimum of |D(1, -gamma + i x)| over x in [0, eps].
double pole_margin_check(double lambda, double gamma, double eps, int grid = 2001);

// Winding number of D(1, .) around the rectangle [re_lo, re_hi] x [im_lo, im_hi],
// i.e. the number of zeros inside.
int count_zeros_rectangle(double lambda, double re_lo, double re_hi, double im_lo, double im_hi);

struct InversionOptions {
    double tol = 2e-6;          // absolute error target for the integral
    double x_max = 1e6;         // hard truncation R
    double max_panel = 0.25;    // panel width cap, further capped by pi / (4 t)
};

// f(t) = Pr(tau_inf > t + 1) by Bromwich inversion of F along Re z = c,
// c > -1 / (Lambda + sqrt 2).
double bromwich_inverse(double lambda, double c, double t, const InversionOptions& opt = {});

// C(Lambda, t) = (1/pi) int_0^inf Re(e^{ixt} F(-gamma + ix)) dx with
// gamma = 1 / (Lambda + 2).
double estimate_C_t(double lambda, double t, const InversionOptions& opt = {});

// The same integral evaluated literally on [0, R] plus a 1/x tail estimate.
// Only usable at moderate t; kept as a cross-check.
double estimate_C_t_direct(double lambda, double t, double R = 1e4);

struct CEstimate {
    double sup = 0.0;
    double t_at_sup = 0.0;
    std::vector<double> t;
    std::vector<double> c;
};

// Supremum of C(Lambda, t) over a log grid of n points on [t_lo, t_hi].
CEstimate estimate_C(double lambda, int n = 200, double t_lo = 1e-3, double t_hi = 3000.0,
                     const InversionOptions& opt = {});

// Closed-form upper bound on C(gamma, Lambda) (all five terms).
double c_analytic_bound(double lambda, double gamma, double B, double eps);
// Defaults gamma = 1/(Lambda+2), B = sqrt(6)(Lambda+1), eps = 1/(136 Lambda).
double c_analytic_bound(double lambda);

}  // namespace ptlab

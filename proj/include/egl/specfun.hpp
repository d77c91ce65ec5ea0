#pragma once

#include <functional>

namespace egl::specfun {

// Negative branch of the Lambert W function on (-1/e, 0).
// Returns w <= -1 with w*exp(w) = x to 1e-12 relative accuracy.
double lambert_w_neg1(double x);

// Upper incomplete gamma Gamma(s, x) = int_x^inf t^{s-1} e^{-t} dt, s > 0, x >= 0.
double upper_inc_gamma(double s, double x);

// log Gamma(s, x); stable for large x where Gamma(s, x) underflows.
double log_upper_inc_gamma(double s, double x);

// Regularized lower incomplete gamma P(s, x) = gamma(s,x)/Gamma(s).
double reg_gamma_p(double s, double x);

// Generalized exponential integral E_nu(z) = int_1^inf e^{-z t} t^{-nu} dt, z > 0.
double exp_integral(double nu, double z);

// Adaptive Gauss-Kronrod (7-15) quadrature over [a, b].
// Splits intervals until |kronrod - gauss| <= max(abs_tol, rel_tol*|integral|)
// per interval share; throws NonConvergenceError past max_splits.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-12, double rel_tol = 1e-10,
                 int max_splits = 1000);

// Integral over (0, inf) via the substitution x = t/(1-t).
double integrate_positive_axis(const std::function<double(double)>& f,
                               double abs_tol = 1e-12, double rel_tol = 1e-10,
                               int max_splits = 1000);

// Standard normal quantile (used for confidence levels).
double normal_quantile(double p);

}  // namespace egl::specfun

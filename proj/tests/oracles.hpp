#pragma once

#include <functional>

// Independent reference implementations used only by the tests. Everything
// here is computed by a different route than the library under test: adaptive
// quadrature instead of series/continued fractions, closed-form solutions
// instead of numerical integration, and a brute-force equality ODE for the
// settling envelope.
namespace oracles {

// Adaptive Simpson quadrature on [a, b] to the given absolute tolerance.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-14);

// Gamma function via two finite integrals (the [0,1] core after the
// substitution t = v^(1/alpha) plus the exponentially damped tail).
double gamma_fn(double alpha);

// Lower regularized incomplete gamma P(a, r) by direct quadrature.
double reg_inc_gamma(double a, double r);

// Regularized incomplete beta I_x(a, b) by direct quadrature, using the
// reflection I_x(a,b) = 1 - I_(1-x)(b,a) to keep the integrand bounded.
double reg_inc_beta(double a, double b, double x);

// Time for dx/dt = -(1/rho1)|x|^rho2 sgn x - rho1 |x|^(2-rho2) sgn x to move
// from |x0| down to eps, from the arctan antiderivative.
double fixed_time_to_reach(double x0, double eps, double rho1, double rho2);

// The same with eps = 0: the exact settling time.
double fixed_time_settling(double x0, double rho1, double rho2);

// Time for dx/dt = -sqrt(a |x| + a |x|^3) sgn x to move from |x0| down to
// eps, by quadrature of dv/sqrt(1+v^4) after x = v^2.
double pred_time_to_reach(double x0, double eps, double a);

// Forward-Euler solution of dy/dt = -y^p / ((1-p) tc) from y(0) = y0,
// clamped at zero, evaluated at time t. This is the equality case of the
// decay bound that settling_envelope solves in closed form.
double envelope_by_ode(double t, double y0, double p, double tc,
                       double step = 1e-6);

}  // namespace oracles

#pragma once

// Gamma, beta, and the regularized incomplete gamma/beta functions together
// with their inverses in the integration variable.  Only positive shape
// parameters are supported; that is all the rest of the library needs.

namespace pts::specfun {

// Termination control for the series and continued-fraction evaluations.
struct Config {
  double rel_tolerance = 1e-12;  // accepted range: (0, 1e-8], see validate()
  int max_iterations = 500;      // must be >= 8
};

// Throws std::invalid_argument if the tolerances are outside the supported
// range (rel_tolerance in (0, 1e-8] is rejected upward: the implementations
// are only guaranteed for requests no looser than 1e-8).
void validate(const Config& cfg);

// log Gamma(x) for x > 0.
double lgamma_fn(double x);

// Gamma(x) for x > 0.
double gamma_fn(double x, const Config& cfg = {});

// B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b) for a, b > 0.
double beta_fn(double a, double b, const Config& cfg = {});

// Regularized lower incomplete gamma P(a, r) for a > 0, r >= 0.
// P(a, 0) = 0 and P(a, r) < 1 for finite r (saturated one ulp below 1).
// https://en.wikipedia.org/wiki/Incomplete_gamma_function
double reg_inc_gamma(double a, double r, const Config& cfg = {});

// Regularized incomplete beta I(a, b, x) for a, b > 0, x in [0, 1].
// I(a, b, 0) = 0, I(a, b, 1) = 1, and I < 1 strictly for x < 1.
// https://en.wikipedia.org/wiki/Beta_function#Incomplete_beta_function
double reg_inc_beta(double a, double b, double x, const Config& cfg = {});

// Inverse of r -> P(a, r) on [0, 1).  Bracketing bisection followed by a
// short Newton polish; |P(a, result) - y| <= rel_tolerance * max(y, 1e-300).
double inv_reg_inc_gamma(double a, double y, const Config& cfg = {});

// Inverse of x -> I(a, b, x) on [0, 1).
double inv_reg_inc_beta(double a, double b, double y, const Config& cfg = {});

}  // namespace pts::specfun

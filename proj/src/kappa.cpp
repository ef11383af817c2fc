#include "pts/kappa.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "pts/specfun.hpp"

namespace pts::kappa {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kOneBelow = 0.99999999999999989;
const double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

void check_positive(double v, const char* family, const char* param) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw std::invalid_argument(std::string(family) + " requires " + param +
                                " > 0, got " + fmt(v));
}

double arg_or(const std::vector<double>& params, std::size_t i, double dflt) {
  return i < params.size() ? params[i] : dflt;
}

}  // namespace

struct K1Function::Impl {
  K1Family family;
  std::string name;
  std::function<double(double)> value;  // on r >= 0, already saturated below 1
  std::function<double(double)> deriv;  // on r >= 0, may return +infinity
  std::function<double(double)> inv;    // on y in [0, 1)
};

K1Function::K1Function(std::shared_ptr<const Impl> impl)
    : impl_(std::move(impl)) {}

double K1Function::evaluate(double r) const {
  if (!(r >= 0.0) || !std::isfinite(r))
    throw std::domain_error(impl_->name + ": evaluate needs finite r >= 0, got " +
                            fmt(r));
  double v = impl_->value(r);
  return v < kOneBelow ? v : kOneBelow;
}

double K1Function::derivative(double r) const {
  if (!(r >= 0.0) || !std::isfinite(r))
    throw std::domain_error(impl_->name +
                            ": derivative needs finite r >= 0, got " + fmt(r));
  return impl_->deriv(r);
}

double K1Function::inverse(double y) const {
  if (!(y >= 0.0 && y < 1.0))
    throw std::domain_error(impl_->name + ": inverse needs y in [0, 1), got " +
                            fmt(y));
  if (y == 0.0) return 0.0;
  return impl_->inv(y);
}

K1Family K1Function::family() const { return impl_->family; }
const std::string& K1Function::describe() const { return impl_->name; }

K1Function K1Function::exp_neg() {
  auto impl = std::make_shared<Impl>();
  impl->family = K1Family::ExpNeg;
  impl->name = "exp_neg";
  impl->value = [](double r) { return -std::expm1(-r); };
  impl->deriv = [](double r) { return std::exp(-r); };
  impl->inv = [](double y) { return -std::log1p(-y); };
  return K1Function(impl);
}

K1Function K1Function::arctan() {
  auto impl = std::make_shared<Impl>();
  impl->family = K1Family::Arctan;
  impl->name = "arctan";
  impl->value = [](double r) { return (2.0 / kPi) * std::atan(r); };
  impl->deriv = [](double r) { return (2.0 / kPi) / (1.0 + r * r); };
  impl->inv = [](double y) { return std::tan(0.5 * kPi * y); };
  return K1Function(impl);
}

K1Function K1Function::rational(double alpha) {
  check_positive(alpha, "rational", "alpha");
  auto impl = std::make_shared<Impl>();
  impl->family = K1Family::Rational;
  impl->name = "rational(alpha=" + fmt(alpha) + ")";
  impl->value = [alpha](double r) { return r / (r + alpha); };
  impl->deriv = [alpha](double r) {
    return alpha / ((r + alpha) * (r + alpha));
  };
  impl->inv = [alpha](double y) { return alpha * y / (1.0 - y); };
  return K1Function(impl);
}

K1Function K1Function::reg_gamma(double alpha) {
  check_positive(alpha, "reg_gamma", "alpha");
  const double lg = specfun::lgamma_fn(alpha);
  auto impl = std::make_shared<Impl>();
  impl->family = K1Family::RegGamma;
  impl->name = "reg_gamma(alpha=" + fmt(alpha) + ")";
  impl->value = [alpha](double r) { return specfun::reg_inc_gamma(alpha, r); };
  impl->deriv = [alpha, lg](double r) {
    if (r == 0.0) {
      if (alpha < 1.0) return kInf;
      return alpha == 1.0 ? 1.0 : 0.0;
    }
    return std::exp((alpha - 1.0) * std::log(r) - r - lg);
  };
  impl->inv = [alpha](double y) {
    return specfun::inv_reg_inc_gamma(alpha, y);
  };
  return K1Function(impl);
}

K1Function K1Function::reg_beta_rational(double alpha, double beta) {
  check_positive(alpha, "reg_beta_rational", "alpha");
  check_positive(beta, "reg_beta_rational", "beta");
  const double lb = specfun::lgamma_fn(alpha) + specfun::lgamma_fn(beta) -
                    specfun::lgamma_fn(alpha + beta);
  auto impl = std::make_shared<Impl>();
  impl->family = K1Family::RegBetaRational;
  impl->name =
      "reg_beta_rational(alpha=" + fmt(alpha) + ", beta=" + fmt(beta) + ")";
  impl->value = [alpha, beta](double r) {
    return specfun::reg_inc_beta(alpha, beta, r / (r + 1.0));
  };
  impl->deriv = [alpha, beta, lb](double r) {
    if (r == 0.0) {
      if (alpha < 1.0) return kInf;
      return alpha == 1.0 ? beta : 0.0;
    }
    // x = r/(r+1), so log x = log r - log(r+1) and log(1-x) = -log(r+1);
    // the final -2 log(r+1) is the substitution Jacobian.
    double lr1 = std::log1p(r);
    return std::exp((alpha - 1.0) * (std::log(r) - lr1) -
                    (beta - 1.0) * lr1 - lb - 2.0 * lr1);
  };
  impl->inv = [alpha, beta](double y) {
    double x = specfun::inv_reg_inc_beta(alpha, beta, y);
    return x / (1.0 - x);
  };
  return K1Function(impl);
}

K1Function K1Function::gamma_form(double alpha, double beta, double s,
                                  double q) {
  check_positive(alpha, "gamma_form", "alpha");
  check_positive(beta, "gamma_form", "beta");
  check_positive(s, "gamma_form", "s");
  check_positive(q, "gamma_form", "q");
  if (!(beta * q < 1.0))
    throw std::invalid_argument("gamma_form requires beta*q < 1, got beta*q = " +
                                fmt(beta * q));
  const double a = (1.0 - beta * q) / s;
  const double lg = specfun::lgamma_fn(a);
  auto impl = std::make_shared<Impl>();
  impl->family = K1Family::GammaForm;
  impl->name = "gamma_form(alpha=" + fmt(alpha) + ", beta=" + fmt(beta) +
               ", s=" + fmt(s) + ", q=" + fmt(q) + ")";
  impl->value = [alpha, s, a](double r) {
    return specfun::reg_inc_gamma(a, alpha * std::pow(r, s));
  };
  impl->deriv = [alpha, s, a, lg](double r) {
    // The slope behaves like r^(s a - 1) near 0 with s a - 1 = -beta q < 0,
    // so it always diverges at the origin.
    if (r == 0.0) return kInf;
    double u = alpha * std::pow(r, s);
    return std::exp(std::log(alpha * s) + (s - 1.0) * std::log(r) +
                    (a - 1.0) * std::log(u) - u - lg);
  };
  impl->inv = [alpha, s, a](double y) {
    double u = specfun::inv_reg_inc_gamma(a, y);
    return std::pow(u / alpha, 1.0 / s);
  };
  return K1Function(impl);
}

K1Function K1Function::exp_pow(double s) {
  if (!(s > 0.0 && s <= 1.0))
    throw std::invalid_argument("exp_pow requires 0 < s <= 1, got s = " +
                                fmt(s));
  auto impl = std::make_shared<Impl>();
  impl->family = K1Family::ExpPowForm;
  impl->name = "exp_pow(s=" + fmt(s) + ")";
  impl->value = [s](double r) { return -std::expm1(-std::pow(r, s)); };
  impl->deriv = [s](double r) {
    if (r == 0.0) return s == 1.0 ? 1.0 : kInf;
    return s * std::pow(r, s - 1.0) * std::exp(-std::pow(r, s));
  };
  impl->inv = [s](double y) {
    return std::pow(-std::log1p(-y), 1.0 / s);
  };
  return K1Function(impl);
}

K1Function K1Function::beta_form(double alpha, double beta, double s, double q,
                                 double k) {
  check_positive(alpha, "beta_form", "alpha");
  check_positive(beta, "beta_form", "beta");
  check_positive(s, "beta_form", "s");
  check_positive(q, "beta_form", "q");
  check_positive(k, "beta_form", "k");
  if (!(k * s < 1.0))
    throw std::invalid_argument("beta_form requires k*s < 1, got k*s = " +
                                fmt(k * s));
  if (!(k * q > 1.0))
    throw std::invalid_argument("beta_form requires k*q > 1, got k*q = " +
                                fmt(k * q));
  const double ms = (1.0 - k * s) / (q - s);
  const double mq = (k * q - 1.0) / (q - s);
  const double lb = specfun::lgamma_fn(ms) + specfun::lgamma_fn(mq) -
                    specfun::lgamma_fn(ms + mq);
  // Constant factor of the slope: beta^ms alpha^mq (q - s) / B(ms, mq).
  const double log_c = ms * std::log(beta) + mq * std::log(alpha) +
                       std::log(q - s) - lb;
  auto impl = std::make_shared<Impl>();
  impl->family = K1Family::BetaForm;
  impl->name = "beta_form(alpha=" + fmt(alpha) + ", beta=" + fmt(beta) +
               ", s=" + fmt(s) + ", q=" + fmt(q) + ", k=" + fmt(k) + ")";
  impl->value = [alpha, beta, s, q, ms, mq](double r) {
    double w = beta * std::pow(r, q - s);
    return specfun::reg_inc_beta(ms, mq, w / (w + alpha));
  };
  impl->deriv = [alpha, beta, s, q, k, log_c](double r) {
    if (r == 0.0) return kInf;
    double w = beta * std::pow(r, q - s);
    return std::exp(log_c - k * s * std::log(r) - k * std::log(w + alpha));
  };
  impl->inv = [alpha, beta, q, s, ms, mq](double y) {
    double x = specfun::inv_reg_inc_beta(ms, mq, y);
    return std::pow(alpha * x / (beta * (1.0 - x)), 1.0 / (q - s));
  };
  return K1Function(impl);
}

std::string family_name(K1Family family) {
  switch (family) {
    case K1Family::ExpNeg: return "exp_neg";
    case K1Family::Arctan: return "arctan";
    case K1Family::Rational: return "rational";
    case K1Family::RegGamma: return "reg_gamma";
    case K1Family::RegBetaRational: return "reg_beta_rational";
    case K1Family::GammaForm: return "gamma_form";
    case K1Family::ExpPowForm: return "exp_pow";
    case K1Family::BetaForm: return "beta_form";
  }
  throw std::invalid_argument("family_name: unknown family value");
}

K1Family parse_family(const std::string& name) {
  if (name == "exp_neg") return K1Family::ExpNeg;
  if (name == "arctan") return K1Family::Arctan;
  if (name == "rational") return K1Family::Rational;
  if (name == "reg_gamma") return K1Family::RegGamma;
  if (name == "reg_beta_rational") return K1Family::RegBetaRational;
  if (name == "gamma_form") return K1Family::GammaForm;
  if (name == "exp_pow") return K1Family::ExpPowForm;
  if (name == "beta_form") return K1Family::BetaForm;
  throw std::invalid_argument(
      "unknown kappa family '" + name +
      "' (expected exp_neg, arctan, rational, reg_gamma, reg_beta_rational, "
      "gamma_form, exp_pow, or beta_form)");
}

K1Function make_k1(K1Family family, const std::vector<double>& params) {
  auto need_at_most = [&](std::size_t n) {
    if (params.size() > n)
      throw std::invalid_argument(family_name(family) + " takes at most " +
                                  std::to_string(n) + " parameters, got " +
                                  std::to_string(params.size()));
  };
  switch (family) {
    case K1Family::ExpNeg:
      need_at_most(0);
      return K1Function::exp_neg();
    case K1Family::Arctan:
      need_at_most(0);
      return K1Function::arctan();
    case K1Family::Rational:
      need_at_most(1);
      return K1Function::rational(arg_or(params, 0, 1.0));
    case K1Family::RegGamma:
      need_at_most(1);
      return K1Function::reg_gamma(arg_or(params, 0, 1.0));
    case K1Family::RegBetaRational:
      need_at_most(2);
      return K1Function::reg_beta_rational(arg_or(params, 0, 0.5),
                                           arg_or(params, 1, 0.5));
    case K1Family::GammaForm:
      need_at_most(4);
      return K1Function::gamma_form(arg_or(params, 0, 1.0),
                                    arg_or(params, 1, 1.0),
                                    arg_or(params, 2, 0.5),
                                    arg_or(params, 3, 0.5));
    case K1Family::ExpPowForm:
      need_at_most(1);
      return K1Function::exp_pow(arg_or(params, 0, 0.5));
    case K1Family::BetaForm:
      need_at_most(5);
      return K1Function::beta_form(arg_or(params, 0, 1.0),
                                   arg_or(params, 1, 1.0),
                                   arg_or(params, 2, 0.5),
                                   arg_or(params, 3, 2.0),
                                   arg_or(params, 4, 1.0));
  }
  throw std::invalid_argument("make_k1: unknown family value");
}

KInfFunction KInfFunction::identity() {
  return {[](double r) { return r; }, [](double) { return 1.0; },
          [](double y) { return y; }, "identity"};
}

KInfFunction KInfFunction::scale(double c) {
  check_positive(c, "scale", "c");
  return {[c](double r) { return c * r; }, [c](double) { return c; },
          [c](double y) { return y / c; }, "scale(" + fmt(c) + ")"};
}

KInfFunction KInfFunction::power(double p) {
  check_positive(p, "power", "p");
  return {[p](double r) { return std::pow(r, p); },
          [p](double r) { return p * std::pow(r, p - 1.0); },
          [p](double y) { return std::pow(y, 1.0 / p); },
          "power(" + fmt(p) + ")"};
}

K1Function compose_k1_kinf(const K1Function& k, const KInfFunction& a) {
  auto impl = std::make_shared<K1Function::Impl>();
  impl->family = k.family();
  impl->name = "compose(" + k.describe() + ", " + a.name + ")";
  impl->value = [k, a](double r) { return k.evaluate(a.value(r)); };
  impl->deriv = [k, a](double r) {
    return k.derivative(a.value(r)) * a.derivative(r);
  };
  impl->inv = [k, a](double y) { return a.inverse(k.inverse(y)); };
  return K1Function(impl);
}

KInfFunction compose_inv_k1(const K1Function& k1, const K1Function& k2) {
  KInfFunction out;
  out.value = [k1, k2](double r) { return k1.inverse(k2.evaluate(r)); };
  out.derivative = [k1, k2](double r) {
    return k2.derivative(r) / k1.derivative(k1.inverse(k2.evaluate(r)));
  };
  out.inverse = [k1, k2](double y) { return k2.inverse(k1.evaluate(y)); };
  out.name = "inverse(" + k1.describe() + ") after " + k2.describe();
  return out;
}

}  // namespace pts::kappa

#include "pts/systems.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "pts/specfun.hpp"

namespace pts::systems {

namespace {

constexpr double kPi = 3.14159265358979323846;

double sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

}  // namespace

double signed_pow(double x, double h) {
  if (x == 0.0) {
    if (h < 0.0)
      throw std::domain_error(
          "signed_pow: negative exponent has no value at x = 0");
    return 0.0;
  }
  if (h == 0.0) return sign(x);
  return std::pow(std::fabs(x), h) * sign(x);
}

Eigen::VectorXd signed_pow(const Eigen::VectorXd& x, double h) {
  double n = x.norm();
  if (n == 0.0) {
    if (h < 0.0)
      throw std::domain_error(
          "signed_pow: negative exponent has no value at the origin");
    return Eigen::VectorXd::Zero(x.size());
  }
  return x * std::pow(n, h - 1.0);
}

FixedTimeSystem::FixedTimeSystem(double rho1, double rho2)
    : rho1_(rho1), rho2_(rho2) {
  if (!(rho1 > 0.0))
    throw std::invalid_argument("FixedTimeSystem requires rho1 > 0, got " +
                                std::to_string(rho1));
  if (!(rho2 > 0.0 && rho2 < 1.0))
    throw std::invalid_argument("FixedTimeSystem requires 0 < rho2 < 1, got " +
                                std::to_string(rho2));
}

double FixedTimeSystem::rhs(double x) const {
  return -(1.0 / rho1_) * signed_pow(x, rho2_) -
         rho1_ * signed_pow(x, 2.0 - rho2_);
}

double FixedTimeSystem::settling_bound() const {
  return kPi / (2.0 * (1.0 - rho2_));
}

RhsFn FixedTimeSystem::vector_field() const {
  FixedTimeSystem self = *this;
  return [self](const Eigen::VectorXd& x, double) {
    Eigen::VectorXd dx(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) dx[i] = self.rhs(x[i]);
    return dx;
  };
}

PredefinedTimeSystem::PredefinedTimeSystem(double rho1, double rho2,
                                           double rho3, double rho4,
                                           double rho5)
    : rho1_(rho1), rho2_(rho2), rho3_(rho3), rho4_(rho4), rho5_(rho5) {
  if (!(rho1 > 0.0))
    throw std::invalid_argument("PredefinedTimeSystem requires rho1 > 0");
  if (!(rho2 > 0.0))
    throw std::invalid_argument("PredefinedTimeSystem requires rho2 > 0");
  if (!(rho5 > 0.0))
    throw std::invalid_argument("PredefinedTimeSystem requires rho5 > 0");
  if (!(rho5 * rho3 > 0.0 && rho5 * rho3 < 1.0))
    throw std::invalid_argument(
        "PredefinedTimeSystem requires 0 < rho5*rho3 < 1, got " +
        std::to_string(rho5 * rho3));
  if (!(rho5 * rho4 > 1.0))
    throw std::invalid_argument(
        "PredefinedTimeSystem requires rho5*rho4 > 1, got " +
        std::to_string(rho5 * rho4));
}

double PredefinedTimeSystem::rhs(double x) const {
  double inner = rho1_ * signed_pow(x, rho3_) + rho2_ * signed_pow(x, rho4_);
  return -signed_pow(inner, rho5_);
}

RhsFn PredefinedTimeSystem::vector_field() const {
  PredefinedTimeSystem self = *this;
  return [self](const Eigen::VectorXd& x, double) {
    Eigen::VectorXd dx(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) dx[i] = self.rhs(x[i]);
    return dx;
  };
}

PredefinedTimeSystem PredefinedTimeSystem::preset(double tc) {
  if (!(tc > 0.0))
    throw std::invalid_argument(
        "PredefinedTimeSystem::preset requires tc > 0, got " +
        std::to_string(tc));
  double g = specfun::gamma_fn(0.25);
  double rho = g * g * g * g / (4.0 * kPi * tc * tc);
  return PredefinedTimeSystem(rho, rho, 1.0, 3.0, 0.5);
}

double PredefinedTimeSystem::settling_bound() const {
  if (!(rho3_ == 1.0 && rho4_ == 3.0 && rho5_ == 0.5 && rho1_ == rho2_))
    throw std::logic_error(
        "PredefinedTimeSystem::settling_bound is only known in closed form "
        "for the preset shape rho3=1, rho4=3, rho5=1/2, rho1=rho2");
  double g = specfun::gamma_fn(0.25);
  return g * g / (2.0 * specfun::gamma_fn(0.5) * std::sqrt(rho1_));
}

DisturbanceSignal::DisturbanceSignal(Fn signal, double bound)
    : signal_(std::move(signal)), bound_(bound) {
  if (!signal_)
    throw std::invalid_argument("DisturbanceSignal requires a callable signal");
  if (!(bound >= 0.0) || !std::isfinite(bound))
    throw std::invalid_argument(
        "DisturbanceSignal requires a finite bound >= 0, got " +
        std::to_string(bound));
}

Eigen::VectorXd DisturbanceSignal::eval(const Eigen::VectorXd& x,
                                        double t) const {
  Eigen::VectorXd d = signal_(x, t);
  // One-ulp slack so a signal that attains its bound exactly (e.g. a
  // rotating vector of constant norm) is not rejected for rounding noise.
  if (d.norm() > bound_ * (1.0 + 1e-12) + 1e-300)
    throw std::runtime_error(
        "disturbance exceeded its declared bound at t = " + std::to_string(t) +
        ": ||d|| = " + std::to_string(d.norm()) + " > " +
        std::to_string(bound_));
  return d;
}

DisturbanceSignal DisturbanceSignal::zero(Eigen::Index dim) {
  return DisturbanceSignal(
      [dim](const Eigen::VectorXd&, double) -> Eigen::VectorXd {
        return Eigen::VectorXd::Zero(dim);
      },
      0.0);
}

CircularReference::CircularReference(double omega) : omega_(omega) {
  if (!(omega > 0.0))
    throw std::invalid_argument("CircularReference requires omega > 0, got " +
                                std::to_string(omega));
}

Eigen::Vector2d CircularReference::at(double t) const {
  return {std::cos(omega_ * t), std::sin(omega_ * t)};
}

Eigen::Vector2d CircularReference::rate(double t) const {
  return {-omega_ * std::sin(omega_ * t), omega_ * std::cos(omega_ * t)};
}

DisturbanceSignal CircularReference::as_disturbance() const {
  CircularReference self = *this;
  return DisturbanceSignal(
      [self](const Eigen::VectorXd&, double t) -> Eigen::VectorXd {
        return -self.rate(t);
      },
      omega_);
}

Eigen::VectorXd reduced_rhs(const Eigen::VectorXd& s, const Eigen::VectorXd& u,
                            const DisturbanceSignal& dist,
                            const Eigen::VectorXd& x_context, double t) {
  if (s.size() != u.size())
    throw std::invalid_argument(
        "reduced_rhs: state and input dimensions differ (" +
        std::to_string(s.size()) + " vs " + std::to_string(u.size()) + ")");
  Eigen::VectorXd d = dist.eval(x_context, t);
  if (d.size() != u.size())
    throw std::invalid_argument(
        "reduced_rhs: disturbance dimension differs from input (" +
        std::to_string(d.size()) + " vs " + std::to_string(u.size()) + ")");
  return u + d;
}

}  // namespace pts::systems

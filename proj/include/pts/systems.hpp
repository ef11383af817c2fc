#pragma once

#include <Eigen/Dense>
#include <functional>

// Signed-power primitives, two scalar benchmark fields whose settling time is
// bounded independently of the initial condition, and the disturbance /
// reference signals used by the tracking scenarios.

namespace pts::systems {

// Vector field signature shared with the integrator: f(x, t) -> dx/dt.
using RhsFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&, double)>;

// |x|^h sign(x), with sign(0) = 0 so the value at the origin is 0 for every
// h >= 0.  h < 0 at x = 0 has no finite value and throws std::domain_error.
double signed_pow(double x, double h);

// x / ||x||^(1-h); norm ||result|| = ||x||^h.  Zero vector at the origin for
// h >= 0, std::domain_error otherwise.
Eigen::VectorXd signed_pow(const Eigen::VectorXd& x, double h);

// dx/dt = -(1/rho1) |x|^rho2 sign(x) - rho1 |x|^(2-rho2) sign(x).
// Settling time from any initial condition is below pi / (2 (1 - rho2)),
// which cannot be pushed under pi/2 by any parameter choice.
class FixedTimeSystem {
 public:
  FixedTimeSystem(double rho1, double rho2);  // rho1 > 0, 0 < rho2 < 1

  double rhs(double x) const;
  double settling_bound() const;  // pi / (2 (1 - rho2))

  // Componentwise application, so a d-dimensional state evolves as d
  // decoupled copies of the scalar system.
  RhsFn vector_field() const;

  double rho1() const { return rho1_; }
  double rho2() const { return rho2_; }

 private:
  double rho1_;
  double rho2_;
};

// dx/dt = -|rho1 |x|^rho3 sign(x) + rho2 |x|^rho4 sign(x)|^rho5 sign(...).
// With the preset parameters the settling bound equals the requested time
// exactly, not merely up to a conservative factor.
class PredefinedTimeSystem {
 public:
  PredefinedTimeSystem(double rho1, double rho2, double rho3, double rho4,
                       double rho5);  // rho1,rho2,rho5 > 0, rho5*rho3 < 1 < rho5*rho4

  double rhs(double x) const;
  RhsFn vector_field() const;

  // rho1 = rho2 = Gamma(1/4)^4 / (4 pi Tc^2), rho3 = 1, rho4 = 3, rho5 = 1/2.
  static PredefinedTimeSystem preset(double tc);

  // Known in closed form only for the preset shape (rho3=1, rho4=3,
  // rho5=1/2, rho1=rho2): Gamma(1/4)^2 / (2 Gamma(1/2) sqrt(rho1)).
  // Throws std::logic_error for other parameter combinations.
  double settling_bound() const;

  double rho1() const { return rho1_; }
  double rho2() const { return rho2_; }
  double rho3() const { return rho3_; }
  double rho4() const { return rho4_; }
  double rho5() const { return rho5_; }

 private:
  double rho1_, rho2_, rho3_, rho4_, rho5_;
};

// Bounded disturbance supplied as a pure callback together with its declared
// bound; eval() enforces the bound at every sample and throws
// std::runtime_error on the first violation.
class DisturbanceSignal {
 public:
  using Fn = std::function<Eigen::VectorXd(const Eigen::VectorXd&, double)>;

  DisturbanceSignal(Fn signal, double bound);  // bound >= 0

  Eigen::VectorXd eval(const Eigen::VectorXd& x, double t) const;
  double bound() const { return bound_; }

  static DisturbanceSignal zero(Eigen::Index dim);

 private:
  Fn signal_;
  double bound_;
};

// Planar reference r(t) = [cos(omega t), sin(omega t)] whose velocity has
// constant norm omega; the tracking scenarios treat the unknown -dr/dt as
// the disturbance acting on the error dynamics.
class CircularReference {
 public:
  explicit CircularReference(double omega = 6.283185307179586);  // omega > 0

  Eigen::Vector2d at(double t) const;
  Eigen::Vector2d rate(double t) const;
  double rate_norm() const { return omega_; }

  // -dr/dt packaged with its exact bound.
  DisturbanceSignal as_disturbance() const;

 private:
  double omega_;
};

// ds/dt = u + disturbance(x, t); s is only consulted for its dimension.
Eigen::VectorXd reduced_rhs(const Eigen::VectorXd& s, const Eigen::VectorXd& u,
                            const DisturbanceSignal& dist,
                            const Eigen::VectorXd& x_context, double t);

}  // namespace pts::systems

#pragma once

#include <Eigen/Dense>
#include <functional>

#include "pts/kappa.hpp"
#include "pts/systems.hpp"

// Robust feedback that drives the reduction variable s to (a ball around) the
// origin within a settling time chosen in advance, plus the manifold
// reduction that turns a fully actuated plant into those s-dynamics.

namespace pts::control {

using K1 = pts::kappa::K1Function;

// rho1: the settling-time budget; rho2: interpolation exponent in [0, 1);
// rho3: gain against the matched disturbance; rho4: smoothing radius of the
// second term (0 selects the discontinuous unit-vector variant).
struct ControllerParams {
  ControllerParams(double rho1, double rho2, double rho3, double rho4,
                   K1 kappa);

  double rho1;
  double rho2;
  double rho3;
  double rho4;
  K1 kappa;
};

// u(s) = -[1 / ((1 - rho2) rho1)] [kappa(||s||)^rho2 / kappa'(||s||)] s/||s||
//        - rho3 s / (||s|| + rho4),
// with u(0) = 0.  Throws std::runtime_error if the slope kappa' vanishes at
// some ||s|| > 0; an unbounded slope contributes a vanishing first term.
Eigen::VectorXd inner_control(const Eigen::VectorXd& s,
                              const ControllerParams& params);

// Manifold s(x, t) with its state Jacobian and explicit time partial.
struct ManifoldSpec {
  std::function<Eigen::VectorXd(const Eigen::VectorXd&, double)> s;
  std::function<Eigen::MatrixXd(const Eigen::VectorXd&, double)> grad;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&, double)> ds_dt;

  // s = x - r(t) for the planar tracking target; the unknown reference rate
  // is left out of ds_dt and enters the reduced dynamics as a disturbance.
  static ManifoldSpec tracking_error(const systems::CircularReference& ref);
};

// Plant-side feedback v = -(G B)^(-1) [G f + ds/dt - u], so that the
// s-dynamics of dx/dt = f + B(v + disturbance) collapse to ds/dt = u + G d.
// Throws std::runtime_error when G B is rank deficient, reporting the
// smallest singular value.
Eigen::VectorXd outer_control(
    const Eigen::VectorXd& x, double t, const ManifoldSpec& manifold,
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f,
    const std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>& b,
    const Eigen::VectorXd& u);

// Radius delta*rho4/(rho3 - delta) of the ball the disturbed closed loop
// ultimately stays in; 0 when rho4 = 0.  Requires rho3 > delta.
double ultimate_bound(const ControllerParams& params, double delta);

// ds/dt = u(s) + d(s, t) packaged for the integrator.  The scenario layer
// must ensure params.rho3 exceeds dist.bound(); this function checks it once.
systems::RhsFn closed_loop_error_rhs(const ControllerParams& params,
                                     const systems::DisturbanceSignal& dist);

}  // namespace pts::control

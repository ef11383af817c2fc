#include "pts/control.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pts::control {

ControllerParams::ControllerParams(double rho1_in, double rho2_in,
                                   double rho3_in, double rho4_in, K1 kappa_in)
    : rho1(rho1_in),
      rho2(rho2_in),
      rho3(rho3_in),
      rho4(rho4_in),
      kappa(std::move(kappa_in)) {
  if (!(rho1 > 0.0))
    throw std::invalid_argument("ControllerParams requires rho1 > 0, got " +
                                std::to_string(rho1));
  if (!(rho2 >= 0.0 && rho2 < 1.0))
    throw std::invalid_argument(
        "ControllerParams requires 0 <= rho2 < 1, got " + std::to_string(rho2));
  if (!(rho3 >= 0.0))
    throw std::invalid_argument("ControllerParams requires rho3 >= 0, got " +
                                std::to_string(rho3));
  if (!(rho4 >= 0.0))
    throw std::invalid_argument("ControllerParams requires rho4 >= 0, got " +
                                std::to_string(rho4));
}

Eigen::VectorXd inner_control(const Eigen::VectorXd& s,
                              const ControllerParams& params) {
  double n = s.norm();
  if (n == 0.0) return Eigen::VectorXd::Zero(s.size());

  double slope = params.kappa.derivative(n);
  if (slope == 0.0)
    throw std::runtime_error(
        "inner_control: kappa slope vanished at ||s|| = " + std::to_string(n) +
        " (" + params.kappa.describe() + "), cannot form the feedback");
  // An unbounded slope makes the first term vanish: finite / inf = 0.
  double first = std::pow(params.kappa.evaluate(n), params.rho2) / slope;
  double first_gain = first / ((1.0 - params.rho2) * params.rho1);

  return -first_gain * (s / n) - params.rho3 * s / (n + params.rho4);
}

ManifoldSpec ManifoldSpec::tracking_error(
    const systems::CircularReference& ref) {
  ManifoldSpec spec;
  spec.s = [ref](const Eigen::VectorXd& x, double t) -> Eigen::VectorXd {
    if (x.size() != 2)
      throw std::invalid_argument(
          "tracking_error manifold expects a planar state, got dimension " +
          std::to_string(x.size()));
    return x - Eigen::VectorXd(ref.at(t));
  };
  spec.grad = [](const Eigen::VectorXd& x, double) -> Eigen::MatrixXd {
    return Eigen::MatrixXd::Identity(x.size(), x.size());
  };
  // The reference rate is treated as unknown, so it is not available here;
  // it reaches the reduced dynamics as the bounded disturbance -dr/dt.
  spec.ds_dt = [](const Eigen::VectorXd& x, double) -> Eigen::VectorXd {
    return Eigen::VectorXd::Zero(x.size());
  };
  return spec;
}

Eigen::VectorXd outer_control(
    const Eigen::VectorXd& x, double t, const ManifoldSpec& manifold,
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f,
    const std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>& b,
    const Eigen::VectorXd& u) {
  Eigen::MatrixXd g = manifold.grad(x, t);
  Eigen::MatrixXd bm = b(x);
  if (g.cols() != bm.rows())
    throw std::invalid_argument(
        "outer_control: Jacobian columns (" + std::to_string(g.cols()) +
        ") do not match input-matrix rows (" + std::to_string(bm.rows()) + ")");
  Eigen::MatrixXd gb = g * bm;

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(gb, Eigen::ComputeThinU |
                                                Eigen::ComputeThinV);
  double smallest = svd.singularValues().tail(1)(0);
  if (!(smallest > 1e-9))
    throw std::runtime_error(
        "outer_control: G*B is rank deficient (smallest singular value " +
        std::to_string(smallest) + ", largest " +
        std::to_string(svd.singularValues()(0)) + ")");

  Eigen::VectorXd rhs = g * f(x) + manifold.ds_dt(x, t) - u;
  return svd.solve(-rhs);
}

double ultimate_bound(const ControllerParams& params, double delta) {
  if (!(delta >= 0.0))
    throw std::invalid_argument("ultimate_bound requires delta >= 0, got " +
                                std::to_string(delta));
  if (!(params.rho3 > delta))
    throw std::invalid_argument(
        "ultimate_bound: gain rho3 = " + std::to_string(params.rho3) +
        " must exceed the disturbance bound delta = " + std::to_string(delta));
  if (params.rho4 == 0.0) return 0.0;
  return delta * params.rho4 / (params.rho3 - delta);
}

systems::RhsFn closed_loop_error_rhs(const ControllerParams& params,
                                     const systems::DisturbanceSignal& dist) {
  if (!(params.rho3 > dist.bound()))
    throw std::invalid_argument(
        "closed_loop_error_rhs: gain rho3 = " + std::to_string(params.rho3) +
        " must exceed the disturbance bound " + std::to_string(dist.bound()));
  return [params, dist](const Eigen::VectorXd& s, double t) -> Eigen::VectorXd {
    return inner_control(s, params) + dist.eval(s, t);
  };
}

}  // namespace pts::control

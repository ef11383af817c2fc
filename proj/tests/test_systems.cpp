#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "oracles.hpp"
#include "pts/specfun.hpp"
#include "pts/systems.hpp"

using namespace pts;
using Eigen::Vector2d;
using Eigen::VectorXd;

TEST_CASE("scalar signed power") {
  CHECK(systems::signed_pow(-2.0, 2.0) == doctest::Approx(-4.0));
  CHECK(systems::signed_pow(2.0, 2.0) == doctest::Approx(4.0));
  CHECK(systems::signed_pow(-8.0, 1.0 / 3.0) == doctest::Approx(-2.0));
  CHECK(systems::signed_pow(9.0, 0.5) == doctest::Approx(3.0));
  CHECK(systems::signed_pow(0.0, 0.5) == 0.0);
  CHECK(systems::signed_pow(0.0, 0.0) == 0.0);
  CHECK(systems::signed_pow(5.0, 0.0) == 1.0);
  CHECK(systems::signed_pow(-5.0, 0.0) == -1.0);
  CHECK_THROWS_AS(systems::signed_pow(0.0, -1.0), std::domain_error);
}

TEST_CASE("vector signed power") {
  VectorXd x(2);
  x << 3.0, 4.0;

  // Exponent zero gives the unit vector.
  VectorXd u = systems::signed_pow(x, 0.0);
  CHECK(u[0] == doctest::Approx(0.6));
  CHECK(u[1] == doctest::Approx(0.8));

  // Norm identity: ||signed_pow(x, h)|| = ||x||^h.
  for (double h : {0.0, 0.3, 0.5, 1.0, 2.0, 3.5}) {
    CHECK(systems::signed_pow(x, h).norm() ==
          doctest::Approx(std::pow(5.0, h)).epsilon(1e-12));
  }

  // Odd symmetry and sign condition: the result points along x.
  VectorXd a = systems::signed_pow(x, 2.0);
  VectorXd b = systems::signed_pow(VectorXd(-x), 2.0);
  CHECK((a + b).norm() == 0.0);
  CHECK(a.dot(x) > 0.0);

  VectorXd zero = systems::signed_pow(VectorXd::Zero(3), 0.5);
  CHECK(zero.norm() == 0.0);
  CHECK(zero.size() == 3);
  CHECK_THROWS_AS(systems::signed_pow(VectorXd::Zero(2), -0.5),
                  std::domain_error);
}

TEST_CASE("fixed-time benchmark field") {
  systems::FixedTimeSystem sys(2.0, 0.5);
  // -(1/2) sqrt(1) - 2 * 1^1.5 = -2.5 at x = 1.
  CHECK(sys.rhs(1.0) == doctest::Approx(-2.5).epsilon(1e-14));
  CHECK(sys.rhs(-1.0) == doctest::Approx(2.5).epsilon(1e-14));
  CHECK(sys.rhs(0.0) == 0.0);
  CHECK(sys.settling_bound() == doctest::Approx(M_PI).epsilon(1e-14));

  systems::FixedTimeSystem unit(1.0, 0.5);
  CHECK(unit.rhs(1.0) == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(unit.settling_bound() == doctest::Approx(M_PI).epsilon(1e-14));

  // The bound is monotone in rho2 and never drops below pi/2.
  CHECK(systems::FixedTimeSystem(1.0, 0.1).settling_bound() ==
        doctest::Approx(M_PI / 1.8).epsilon(1e-14));
  for (double rho2 : {0.01, 0.3, 0.7, 0.99}) {
    CHECK(systems::FixedTimeSystem(3.0, rho2).settling_bound() > M_PI / 2.0);
  }

  // Componentwise vector field.
  VectorXd x(3);
  x << 1.0, 0.0, -1.0;
  VectorXd dx = sys.vector_field()(x, 0.0);
  CHECK(dx[0] == doctest::Approx(-2.5));
  CHECK(dx[1] == 0.0);
  CHECK(dx[2] == doctest::Approx(2.5));

  CHECK_THROWS_AS(systems::FixedTimeSystem(0.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(systems::FixedTimeSystem(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(systems::FixedTimeSystem(1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(systems::FixedTimeSystem(1.0, -0.2), std::invalid_argument);
}

TEST_CASE("assignable-budget benchmark field") {
  systems::PredefinedTimeSystem sys(1.0, 1.0, 1.0, 3.0, 0.5);
  // -(1 + 1)^0.5 = -sqrt(2) at x = 1.
  CHECK(sys.rhs(1.0) == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-14));
  CHECK(sys.rhs(-1.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(sys.rhs(0.0) == 0.0);

  CHECK_THROWS_AS(systems::PredefinedTimeSystem(0.0, 1.0, 1.0, 3.0, 0.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(systems::PredefinedTimeSystem(1.0, 0.0, 1.0, 3.0, 0.5),
                  std::invalid_argument);
  // rho5 rho3 must stay below 1 and rho5 rho4 above 1.
  CHECK_THROWS_AS(systems::PredefinedTimeSystem(1.0, 1.0, 2.0, 3.0, 0.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(systems::PredefinedTimeSystem(1.0, 1.0, 1.0, 1.5, 0.5),
                  std::invalid_argument);
}

TEST_CASE("preset coefficients make the bound equal the budget") {
  // rho1 = Gamma(1/4)^4 / (4 pi Tc^2), frozen for the three budgets.
  CHECK(systems::PredefinedTimeSystem::preset(0.5).rho1() ==
        doctest::Approx(55.00148654416298).epsilon(1e-12));
  CHECK(systems::PredefinedTimeSystem::preset(1.0).rho1() ==
        doctest::Approx(13.750371636040745).epsilon(1e-12));
  CHECK(systems::PredefinedTimeSystem::preset(2.0).rho1() ==
        doctest::Approx(3.4375929090101863).epsilon(1e-12));

  for (double tc : {0.5, 1.0, 2.0}) {
    auto sys = systems::PredefinedTimeSystem::preset(tc);
    CHECK(sys.rho3() == 1.0);
    CHECK(sys.rho4() == 3.0);
    CHECK(sys.rho5() == 0.5);
    CHECK(sys.rho1() == sys.rho2());
    CHECK(sys.settling_bound() == doctest::Approx(tc).epsilon(1e-12));
    // Independent route: the bound is the infinite-start limit of the
    // quadrature travel time.
    CHECK(oracles::pred_time_to_reach(1e30, 0.0, sys.rho1()) ==
          doctest::Approx(tc).epsilon(1e-6));
  }

  // The closed-form bound only applies to the preset shape.
  CHECK_THROWS_AS(systems::PredefinedTimeSystem(1.0, 1.0, 1.0, 3.0, 0.4)
                      .settling_bound(),
                  std::logic_error);
  CHECK_THROWS_AS(systems::PredefinedTimeSystem(1.0, 2.0, 1.0, 3.0, 0.5)
                      .settling_bound(),
                  std::logic_error);
}

TEST_CASE("disturbance bound is enforced at evaluation") {
  auto ok = systems::DisturbanceSignal(
      [](const VectorXd&, double t) -> VectorXd {
        Vector2d d(std::sin(t), std::cos(t));
        return d;
      },
      1.0);
  CHECK(ok.bound() == 1.0);
  CHECK(ok.eval(VectorXd::Zero(2), 0.3).norm() == doctest::Approx(1.0));

  auto lying = systems::DisturbanceSignal(
      [](const VectorXd&, double) -> VectorXd {
        Vector2d d(3.0, 4.0);
        return d;
      },
      1.0);
  CHECK_THROWS_AS(lying.eval(VectorXd::Zero(2), 0.0), std::runtime_error);

  auto z = systems::DisturbanceSignal::zero(3);
  CHECK(z.bound() == 0.0);
  CHECK(z.eval(VectorXd::Ones(3), 1.0).norm() == 0.0);
  CHECK(z.eval(VectorXd::Ones(3), 1.0).size() == 3);

  CHECK_THROWS_AS(systems::DisturbanceSignal(
                      [](const VectorXd&, double) -> VectorXd {
                        return VectorXd::Zero(2);
                      },
                      -1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(systems::DisturbanceSignal(nullptr, 1.0),
                  std::invalid_argument);
}

TEST_CASE("circular reference kinematics") {
  systems::CircularReference ref(2.0);
  CHECK(ref.at(0.0)[0] == 1.0);
  CHECK(ref.at(0.0)[1] == 0.0);
  CHECK(std::fabs(ref.at(M_PI / 4.0)[0]) < 1e-15);
  CHECK(ref.at(M_PI / 4.0)[1] == doctest::Approx(1.0));
  CHECK(ref.rate_norm() == 2.0);
  for (double t : {0.0, 0.7, 2.9}) {
    CHECK(ref.rate(t).norm() == doctest::Approx(2.0).epsilon(1e-12));
    // rate is the time derivative of the position.
    double h = 1e-6;
    Vector2d fd = (ref.at(t + h) - ref.at(t - h)) / (2.0 * h);
    CHECK((fd - ref.rate(t)).norm() < 1e-8);
  }

  auto dist = ref.as_disturbance();
  CHECK(dist.bound() == 2.0);
  for (double t : {0.0, 1.3}) {
    CHECK((dist.eval(VectorXd::Zero(2), t) + ref.rate(t)).norm() <
          1e-12);
  }

  // Default angular speed is one revolution per unit time.
  CHECK(systems::CircularReference().rate_norm() ==
        doctest::Approx(2.0 * M_PI).epsilon(1e-15));
  CHECK_THROWS_AS(systems::CircularReference(0.0), std::invalid_argument);
}

TEST_CASE("reduced dynamics add control and disturbance") {
  VectorXd s(2), u(2), x(2);
  s << 0.1, 0.2;
  u << -1.0, 0.5;
  x << 9.0, 9.0;
  auto d = systems::DisturbanceSignal(
      [](const VectorXd&, double) -> VectorXd {
        Vector2d v(0.25, -0.25);
        return v;
      },
      1.0);
  VectorXd ds = systems::reduced_rhs(s, u, d, x, 0.0);
  CHECK(ds[0] == doctest::Approx(-0.75));
  CHECK(ds[1] == doctest::Approx(0.25));

  VectorXd ds0 = systems::reduced_rhs(s, VectorXd::Zero(2),
                                      systems::DisturbanceSignal::zero(2), x,
                                      0.0);
  CHECK(ds0.norm() == 0.0);

  VectorXd bad(3);
  bad << 1.0, 2.0, 3.0;
  CHECK_THROWS_AS(systems::reduced_rhs(s, bad, d, x, 0.0),
                  std::invalid_argument);
}

TEST_CASE("fixed-time field solves to the arctan travel time") {
  // Integrate the scalar field crudely and compare against the closed form;
  // the integrator itself is tested elsewhere, so keep this self-contained.
  for (double rho1 : {0.5, 2.0}) {
    for (double rho2 : {0.3, 0.7}) {
      systems::FixedTimeSystem sys(rho1, rho2);
      double x = 1.0;
      double t = 0.0;
      double dt = 1e-6;
      while (x > 1e-3 && t < 20.0) {
        x += dt * sys.rhs(x);
        t += dt;
      }
      double want = oracles::fixed_time_to_reach(1.0, 1e-3, rho1, rho2);
      CHECK(t == doctest::Approx(want).epsilon(1e-3));
    }
  }
}

#pragma once

#include <Eigen/Dense>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "pts/kappa.hpp"
#include "pts/sim.hpp"
#include "pts/systems.hpp"

// Post-hoc trajectory verification: settling-time measurement against claimed
// bounds, the worst-case decay envelope and its dominance check, the decrease
// inequality margin along trajectories, and ultimate-bound verdicts.

namespace pts::analysis {

struct SettlingReport {
  bool settled = false;
  // Earliest recorded time from which every later sample stays inside the
  // epsilon ball; NaN when the trajectory still leaves the ball at the end.
  double settling_time = std::numeric_limits<double>::quiet_NaN();
  double epsilon = 0.0;
  double dwell = 0.0;
  double bound_claimed = std::numeric_limits<double>::infinity();
  bool satisfied = false;  // settled and settling_time <= bound_claimed
};

// Uses the integrator's undecimated settle monitor when it was configured
// with the same epsilon; otherwise scans the recorded samples.
SettlingReport settling_time(
    const sim::Trajectory& traj, double epsilon, double dwell,
    double bound_claimed = std::numeric_limits<double>::infinity());

// Worst-case decay profile in kappa coordinates:
// w(t) = [kappa_v0^(1-p) - t/tc]^(1/(1-p)), exactly 0 once
// t >= tc * kappa_v0^(1-p).  Non-increasing in t for kappa_v0 in [0, 1).
double settling_envelope(double t, double kappa_v0, double p, double tc);

struct EnvelopeCheck {
  double max_violation = -std::numeric_limits<double>::infinity();
  double tolerance = 0.0;
  bool passed = true;  // max_violation <= tolerance
};

// max over recorded samples of kappa(||x(t)||) - settling_envelope(t, ...),
// seeded with kappa of the initial norm.
EnvelopeCheck envelope_check(const sim::Trajectory& traj,
                             const kappa::K1Function& k, double p, double tc,
                             double tolerance);

// Forward-difference dV/dt against the decrease rate
// -kappa(V)^p / ((1-p) tc kappa'(V)) on samples with ||x|| >= mu and V > 0.
// Each sample gets a local allowance 10 * dt * max(curvature estimate,
// rounding floor), so the verdict ignores isolated dead-band switching events
// where a one-step difference is not a derivative; max_violation is reported
// net of that allowance and the tolerance field is 0.  Throws when kappa'
// vanishes at a visited V > 0.
EnvelopeCheck lyapunov_margin(
    const sim::Trajectory& traj,
    const std::function<double(const Eigen::VectorXd&)>& v,
    const kappa::K1Function& k, double p, double tc, double mu);

struct BoundCheck {
  bool passed = false;
  double bound = 0.0;  // enforced radius, b + slack
  double after = 0.0;  // time the bound must hold from
  double max_norm_after = std::numeric_limits<double>::quiet_NaN();
  double first_violation_time = std::numeric_limits<double>::quiet_NaN();
};

// ||x(t)|| <= b + slack for every sample with t >= tc.  Prefers the
// undecimated monitor when the integrator ran with monitor_after == tc and
// monitor_bound == b + slack.  Throws when the trajectory ends at or before
// tc (nothing to check).
BoundCheck ultimate_bound_check(const sim::Trajectory& traj, double b,
                                double tc, double slack);

struct SweepRow {
  std::string params;
  double x0 = 0.0;
  double measured = std::numeric_limits<double>::quiet_NaN();
  double claimed = std::numeric_limits<double>::infinity();
  bool satisfied = false;
};

// One simulated settling measurement per (parameter point, initial value).
std::vector<SweepRow> settling_bound_sweep(
    const std::vector<systems::FixedTimeSystem>& grid,
    const std::vector<double>& x0_grid, double epsilon,
    const sim::IntegrationConfig& cfg, double dwell = 0.05);
std::vector<SweepRow> settling_bound_sweep(
    const std::vector<systems::PredefinedTimeSystem>& grid,
    const std::vector<double>& x0_grid, double epsilon,
    const sim::IntegrationConfig& cfg, double dwell = 0.05);

// Largest measured settling time within each parameter point, minimized over
// the parameter grid; rows that did not settle count as +infinity for their
// point's supremum.
double min_of_suprema(const std::vector<SweepRow>& rows);

}  // namespace pts::analysis

#pragma once

#include <Eigen/Dense>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "pts/systems.hpp"

// Fixed-step integration for closed loops whose right-hand side may be
// discontinuous at the origin.  The recording grid is uniform; optional
// monitors run on the undecimated stream so decimation never hides a
// settling or bound violation.

namespace pts::sim {

enum class Method { Euler, RK4 };

struct IntegrationConfig {
  double step = 1e-5;        // fundamental step, seconds
  double t_end = 1.0;        // horizon, rounded to a whole number of steps
  int record_stride = 1;     // store every k-th sample
  double deadband_radius = 1e-6;
  bool clamp_enabled = false;  // once ||x|| <= deadband_radius, hold x = 0
  Method method = Method::Euler;

  // Large initial conditions make a superlinear field overshoot at any fixed
  // step, so a fundamental step is internally split into substeps whenever
  // ||rhs|| * step > guard_fraction * ||x|| while ||x|| > guard_floor.  The
  // floor keeps the guard disarmed near the origin, where a sublinear field
  // would otherwise demand ever-shorter substeps.  Recorded samples stay on
  // the uniform grid; meta.guard_activations counts the split steps.
  bool guard_enabled = true;
  double guard_fraction = 0.1;
  double guard_floor = 1.0;

  // Undecimated monitors (disabled when negative).  settle_epsilon latches
  // the last time ||x|| exceeded it; monitor_after tracks the running
  // maximum of ||x|| from that time on and the first sample above
  // monitor_bound.
  double settle_epsilon = -1.0;
  double monitor_after = -1.0;
  double monitor_bound = std::numeric_limits<double>::infinity();
};

// Throws std::invalid_argument naming the violated constraint.
void validate(const IntegrationConfig& cfg);

struct TrajectoryMeta {
  std::string label;
  double step = 0.0;
  int record_stride = 1;
  long long total_steps = 0;
  long long guard_activations = 0;

  bool clamped = false;  // dead-band clamp engaged at clamp_time
  double clamp_time = std::numeric_limits<double>::quiet_NaN();

  // Mirrors of the monitor configuration plus their undecimated results.
  double settle_epsilon = -1.0;
  double last_exceed_time = -1.0;  // last t with ||x|| > settle_epsilon, -1 if none
  bool exceeds_at_end = false;

  double monitor_after = -1.0;
  double monitor_bound = std::numeric_limits<double>::infinity();
  double max_norm_after = std::numeric_limits<double>::quiet_NaN();
  double first_violation_time = std::numeric_limits<double>::quiet_NaN();
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> states;
  std::vector<double> norms;
  TrajectoryMeta meta;

  Eigen::Index dim() const { return states.empty() ? 0 : states.front().size(); }
};

// Forward Euler (or RK4) from x0 over [0, t_end].  Samples are recorded at
// t = 0, stride*step, 2*stride*step, ...; monitors see every step.  Throws
// std::runtime_error naming the first step at which the state left the
// finite range.
Trajectory integrate(const systems::RhsFn& rhs, const Eigen::VectorXd& x0,
                     const IntegrationConfig& cfg,
                     const std::string& label = "");

struct BatchItem {
  systems::RhsFn rhs;
  Eigen::VectorXd x0;
  IntegrationConfig cfg;
  std::string label;
};

struct BatchResult {
  std::optional<Trajectory> trajectory;  // empty on failure
  std::string error;                     // empty on success
};

// Runs every item even if some fail; results keep input order.
std::vector<BatchResult> integrate_batch(const std::vector<BatchItem>& items);

}  // namespace pts::sim

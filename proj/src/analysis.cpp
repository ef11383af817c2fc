#include "pts/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

namespace pts::analysis {

namespace {

const double kNaN = std::numeric_limits<double>::quiet_NaN();
const double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

void require_samples(const sim::Trajectory& traj, const char* who) {
  if (traj.times.empty())
    throw std::invalid_argument(std::string(who) + ": empty trajectory");
  if (traj.times.size() != traj.states.size() ||
      traj.times.size() != traj.norms.size())
    throw std::invalid_argument(std::string(who) +
                                ": trajectory arrays have unequal lengths");
}

}  // namespace

SettlingReport settling_time(const sim::Trajectory& traj, double epsilon,
                             double dwell, double bound_claimed) {
  require_samples(traj, "settling_time");
  if (!(epsilon > 0.0))
    throw std::invalid_argument("settling_time requires epsilon > 0, got " +
                                fmt(epsilon));
  if (!(dwell > 0.0))
    throw std::invalid_argument("settling_time requires dwell > 0, got " +
                                fmt(dwell));

  SettlingReport report;
  report.epsilon = epsilon;
  report.dwell = dwell;
  report.bound_claimed = bound_claimed;

  if (traj.meta.settle_epsilon == epsilon) {
    // The integrator latched the last time the norm exceeded epsilon on the
    // undecimated stream; the settling instant is one step later.
    if (!traj.meta.exceeds_at_end) {
      report.settled = true;
      report.settling_time = traj.meta.last_exceed_time < 0.0
                                 ? traj.times.front()
                                 : traj.meta.last_exceed_time + traj.meta.step;
    }
  } else {
    std::size_t n = traj.norms.size();
    std::size_t last_exceed = n;  // index of last sample outside the ball
    for (std::size_t i = n; i-- > 0;) {
      if (traj.norms[i] > epsilon) {
        last_exceed = i;
        break;
      }
    }
    if (last_exceed == n) {
      report.settled = true;
      report.settling_time = traj.times.front();
    } else if (last_exceed + 1 < n) {
      report.settled = true;
      report.settling_time = traj.times[last_exceed + 1];
    }
  }

  report.satisfied = report.settled && report.settling_time <= bound_claimed;
  return report;
}

double settling_envelope(double t, double kappa_v0, double p, double tc) {
  if (!(t >= 0.0))
    throw std::invalid_argument("settling_envelope requires t >= 0, got " +
                                fmt(t));
  if (!(kappa_v0 >= 0.0 && kappa_v0 < 1.0))
    throw std::invalid_argument(
        "settling_envelope requires kappa_v0 in [0, 1), got " + fmt(kappa_v0));
  if (!(p >= 0.0 && p < 1.0))
    throw std::invalid_argument("settling_envelope requires 0 <= p < 1, got " +
                                fmt(p));
  if (!(tc > 0.0))
    throw std::invalid_argument("settling_envelope requires tc > 0, got " +
                                fmt(tc));
  double base = std::pow(kappa_v0, 1.0 - p) - t / tc;
  if (base <= 0.0) return 0.0;
  return std::pow(base, 1.0 / (1.0 - p));
}

EnvelopeCheck envelope_check(const sim::Trajectory& traj,
                             const kappa::K1Function& k, double p, double tc,
                             double tolerance) {
  require_samples(traj, "envelope_check");
  double kv0 = k.evaluate(traj.norms.front());
  EnvelopeCheck check;
  check.tolerance = tolerance;
  check.max_violation = -kInf;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    double diff = k.evaluate(traj.norms[i]) -
                  settling_envelope(traj.times[i], kv0, p, tc);
    check.max_violation = std::max(check.max_violation, diff);
  }
  check.passed = check.max_violation <= tolerance;
  return check;
}

EnvelopeCheck lyapunov_margin(
    const sim::Trajectory& traj,
    const std::function<double(const Eigen::VectorXd&)>& v,
    const kappa::K1Function& k, double p, double tc, double mu) {
  require_samples(traj, "lyapunov_margin");
  if (traj.times.size() < 2)
    throw std::invalid_argument(
        "lyapunov_margin needs at least two samples to difference");
  if (!(p >= 0.0 && p < 1.0))
    throw std::invalid_argument("lyapunov_margin requires 0 <= p < 1, got " +
                                fmt(p));
  if (!(tc > 0.0))
    throw std::invalid_argument("lyapunov_margin requires tc > 0, got " +
                                fmt(tc));
  if (!(mu >= 0.0))
    throw std::invalid_argument("lyapunov_margin requires mu >= 0, got " +
                                fmt(mu));

  const std::size_t n = traj.times.size();
  const double dt = traj.times[1] - traj.times[0];
  const double eps = std::numeric_limits<double>::epsilon();

  std::vector<double> vals(n);
  for (std::size_t i = 0; i < n; ++i) {
    vals[i] = v(traj.states[i]);
    if (!(vals[i] >= 0.0) || !std::isfinite(vals[i]))
      throw std::invalid_argument(
          "lyapunov_margin: V must be finite and nonnegative, got " +
          fmt(vals[i]) + " at t = " + fmt(traj.times[i]));
  }

  EnvelopeCheck check;
  check.tolerance = 0.0;
  check.max_violation = -kInf;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (traj.norms[i] < mu) continue;
    double vi = vals[i];
    if (vi == 0.0) continue;  // decrease claim is vacuous at the origin

    double slope = k.derivative(vi);
    if (slope == 0.0)
      throw std::runtime_error(
          "lyapunov_margin: kappa slope vanished at V = " + fmt(vi) +
          ", the decrease rate is undefined");
    double rate = std::pow(k.evaluate(vi), p) / ((1.0 - p) * tc * slope);

    double lhs = (vals[i + 1] - vi) / dt;
    // Curvature from the second difference; where it blows up (switching
    // events) the one-step difference is meaningless and the allowance grows
    // to match.  The second term floors the allowance at rounding noise.
    std::size_t c = std::max<std::size_t>(i, 1);
    double curvature =
        std::fabs(vals[c + 1] - 2.0 * vals[c] + vals[c - 1]) / (dt * dt);
    double allowance =
        10.0 * dt * std::max(curvature, 4.0 * eps * std::max(vi, 1.0) / (dt * dt));

    check.max_violation =
        std::max(check.max_violation, lhs + rate - allowance);
  }
  check.passed = check.max_violation <= check.tolerance;
  return check;
}

BoundCheck ultimate_bound_check(const sim::Trajectory& traj, double b,
                                double tc, double slack) {
  require_samples(traj, "ultimate_bound_check");
  if (!(b >= 0.0))
    throw std::invalid_argument("ultimate_bound_check requires b >= 0, got " +
                                fmt(b));
  if (!(tc > 0.0))
    throw std::invalid_argument("ultimate_bound_check requires tc > 0, got " +
                                fmt(tc));
  if (!(slack >= 0.0))
    throw std::invalid_argument(
        "ultimate_bound_check requires slack >= 0, got " + fmt(slack));
  if (!(traj.times.back() > tc))
    throw std::runtime_error(
        "ultimate_bound_check: trajectory ends at t = " +
        fmt(traj.times.back()) + ", which does not cover the bound time " +
        fmt(tc));

  BoundCheck check;
  check.bound = b + slack;
  check.after = tc;

  if (traj.meta.monitor_after == tc && traj.meta.monitor_bound == check.bound &&
      !std::isnan(traj.meta.max_norm_after)) {
    check.max_norm_after = traj.meta.max_norm_after;
    check.first_violation_time = traj.meta.first_violation_time;
    check.passed = check.max_norm_after <= check.bound;
    return check;
  }

  double max_norm = -kInf;
  double first_violation = kNaN;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    if (traj.times[i] < tc) continue;
    max_norm = std::max(max_norm, traj.norms[i]);
    if (traj.norms[i] > check.bound && std::isnan(first_violation))
      first_violation = traj.times[i];
  }
  check.max_norm_after = max_norm;
  check.first_violation_time = first_violation;
  check.passed = max_norm <= check.bound;
  return check;
}

namespace {

template <typename System>
std::vector<SweepRow> sweep_impl(const std::vector<System>& grid,
                                 const std::vector<double>& x0_grid,
                                 double epsilon,
                                 const sim::IntegrationConfig& cfg,
                                 double dwell,
                                 std::string (*describe)(const System&)) {
  if (grid.empty() || x0_grid.empty())
    throw std::invalid_argument("settling_bound_sweep: empty grid");
  sim::IntegrationConfig run_cfg = cfg;
  run_cfg.settle_epsilon = epsilon;

  std::vector<SweepRow> rows;
  rows.reserve(grid.size() * x0_grid.size());
  for (const System& sys : grid) {
    std::string params = describe(sys);
    double claimed = sys.settling_bound();
    for (double x0 : x0_grid) {
      Eigen::VectorXd state(1);
      state << x0;
      sim::Trajectory traj =
          sim::integrate(sys.vector_field(), state, run_cfg, params);
      SettlingReport rep = settling_time(traj, epsilon, dwell, claimed);
      SweepRow row;
      row.params = params;
      row.x0 = x0;
      row.measured = rep.settling_time;
      row.claimed = claimed;
      row.satisfied = rep.satisfied;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string describe_fixed(const systems::FixedTimeSystem& sys) {
  return "rho1=" + fmt(sys.rho1()) + ", rho2=" + fmt(sys.rho2());
}

std::string describe_pred(const systems::PredefinedTimeSystem& sys) {
  return "rho1=" + fmt(sys.rho1()) + ", rho2=" + fmt(sys.rho2()) +
         ", rho3=" + fmt(sys.rho3()) + ", rho4=" + fmt(sys.rho4()) +
         ", rho5=" + fmt(sys.rho5());
}

}  // namespace

std::vector<SweepRow> settling_bound_sweep(
    const std::vector<systems::FixedTimeSystem>& grid,
    const std::vector<double>& x0_grid, double epsilon,
    const sim::IntegrationConfig& cfg, double dwell) {
  return sweep_impl(grid, x0_grid, epsilon, cfg, dwell, describe_fixed);
}

std::vector<SweepRow> settling_bound_sweep(
    const std::vector<systems::PredefinedTimeSystem>& grid,
    const std::vector<double>& x0_grid, double epsilon,
    const sim::IntegrationConfig& cfg, double dwell) {
  return sweep_impl(grid, x0_grid, epsilon, cfg, dwell, describe_pred);
}

double min_of_suprema(const std::vector<SweepRow>& rows) {
  if (rows.empty())
    throw std::invalid_argument("min_of_suprema: empty table");
  std::map<std::string, double> sup;
  for (const SweepRow& row : rows) {
    double m = std::isnan(row.measured) ? kInf : row.measured;
    auto [it, inserted] = sup.try_emplace(row.params, m);
    if (!inserted) it->second = std::max(it->second, m);
  }
  double result = kInf;
  for (const auto& [params, s] : sup) result = std::min(result, s);
  return result;
}

}  // namespace pts::analysis

#include "pts/sim.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pts::sim {

namespace {

constexpr int kMaxSubsteps = 100000;

std::string fmt_t(double t) { return std::to_string(t); }

Eigen::VectorXd rhs_checked(const systems::RhsFn& rhs, const Eigen::VectorXd& x,
                            double t, long long k) {
  Eigen::VectorXd f = rhs(x, t);
  if (f.size() != x.size())
    throw std::invalid_argument(
        "integrate: rhs returned dimension " + std::to_string(f.size()) +
        " for state dimension " + std::to_string(x.size()));
  if (!f.allFinite())
    throw std::runtime_error(
        "integrate: right-hand side became non-finite at step " +
        std::to_string(k) + ", t = " + fmt_t(t));
  return f;
}

Eigen::VectorXd step_once(const systems::RhsFn& rhs, const Eigen::VectorXd& x,
                          const Eigen::VectorXd& f1, double t, double h,
                          Method method) {
  if (method == Method::Euler) return x + h * f1;
  Eigen::VectorXd k2 = rhs(x + 0.5 * h * f1, t + 0.5 * h);
  Eigen::VectorXd k3 = rhs(x + 0.5 * h * k2, t + 0.5 * h);
  Eigen::VectorXd k4 = rhs(x + h * k3, t + h);
  return x + (h / 6.0) * (f1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

void validate(const IntegrationConfig& cfg) {
  if (!(cfg.step > 0.0) || !std::isfinite(cfg.step))
    throw std::invalid_argument("IntegrationConfig requires step > 0, got " +
                                std::to_string(cfg.step));
  if (!(cfg.t_end >= cfg.step) || !std::isfinite(cfg.t_end))
    throw std::invalid_argument(
        "IntegrationConfig requires t_end >= step, got t_end = " +
        std::to_string(cfg.t_end));
  if (cfg.record_stride < 1)
    throw std::invalid_argument(
        "IntegrationConfig requires record_stride >= 1, got " +
        std::to_string(cfg.record_stride));
  if (!(cfg.deadband_radius >= 0.0))
    throw std::invalid_argument(
        "IntegrationConfig requires deadband_radius >= 0, got " +
        std::to_string(cfg.deadband_radius));
  if (!(cfg.guard_fraction > 0.0 && cfg.guard_fraction <= 1.0))
    throw std::invalid_argument(
        "IntegrationConfig requires 0 < guard_fraction <= 1, got " +
        std::to_string(cfg.guard_fraction));
  if (!(cfg.guard_floor >= 0.0))
    throw std::invalid_argument(
        "IntegrationConfig requires guard_floor >= 0, got " +
        std::to_string(cfg.guard_floor));
  if (!(cfg.monitor_bound >= 0.0))
    throw std::invalid_argument(
        "IntegrationConfig requires monitor_bound >= 0, got " +
        std::to_string(cfg.monitor_bound));
}

Trajectory integrate(const systems::RhsFn& rhs, const Eigen::VectorXd& x0,
                     const IntegrationConfig& cfg, const std::string& label) {
  validate(cfg);
  if (x0.size() < 1)
    throw std::invalid_argument("integrate: empty initial state");
  if (!x0.allFinite())
    throw std::invalid_argument("integrate: non-finite initial state");

  long long n_steps = std::llround(cfg.t_end / cfg.step);
  if (n_steps < 1) n_steps = 1;

  Trajectory out;
  out.meta.label = label;
  out.meta.step = cfg.step;
  out.meta.record_stride = cfg.record_stride;
  out.meta.total_steps = n_steps;
  out.meta.settle_epsilon = cfg.settle_epsilon;
  out.meta.monitor_after = cfg.monitor_after;
  out.meta.monitor_bound = cfg.monitor_bound;
  out.times.reserve(static_cast<std::size_t>(n_steps / cfg.record_stride) + 2);
  out.states.reserve(out.times.capacity());
  out.norms.reserve(out.times.capacity());

  Eigen::VectorXd x = x0;
  bool clamped = false;
  double norm = 0.0;

  for (long long k = 0; k <= n_steps; ++k) {
    double t = static_cast<double>(k) * cfg.step;
    norm = x.norm();

    if (cfg.settle_epsilon >= 0.0 && norm > cfg.settle_epsilon)
      out.meta.last_exceed_time = t;
    if (cfg.monitor_after >= 0.0 && t >= cfg.monitor_after) {
      if (std::isnan(out.meta.max_norm_after) || norm > out.meta.max_norm_after)
        out.meta.max_norm_after = norm;
      if (norm > cfg.monitor_bound && std::isnan(out.meta.first_violation_time))
        out.meta.first_violation_time = t;
    }

    if (k % cfg.record_stride == 0) {
      out.times.push_back(t);
      out.states.push_back(x);
      out.norms.push_back(norm);
    }
    if (k == n_steps) break;
    if (clamped) continue;

    // Advance one fundamental step, splitting it whenever the update would
    // move the state by more than guard_fraction of its own norm.
    double remaining = cfg.step;
    int substeps = 0;
    while (true) {
      double t_local = t + (cfg.step - remaining);
      Eigen::VectorXd f = rhs_checked(rhs, x, t_local, k);
      double h = remaining;
      bool split = false;
      if (cfg.guard_enabled) {
        double xn = x.norm();
        double fn = f.norm();
        if (xn > cfg.guard_floor && fn * h > cfg.guard_fraction * xn) {
          h = cfg.guard_fraction * xn / fn;
          split = h < remaining;
        }
      }
      x = step_once(rhs, x, f, t_local, h, cfg.method);
      if (!x.allFinite())
        throw std::runtime_error(
            "integrate: state became non-finite at step " + std::to_string(k) +
            ", t = " + fmt_t(t_local + h));
      if (!split) break;
      remaining -= h;
      if (++substeps > kMaxSubsteps)
        throw std::runtime_error(
            "integrate: step guard could not stabilize the update at t = " +
            fmt_t(t_local) + " (state norm " + std::to_string(x.norm()) + ")");
    }
    if (substeps > 0) ++out.meta.guard_activations;

    if (cfg.clamp_enabled && x.norm() <= cfg.deadband_radius) {
      x.setZero();
      if (!clamped) {
        clamped = true;
        out.meta.clamped = true;
        out.meta.clamp_time = static_cast<double>(k + 1) * cfg.step;
      }
    }
  }

  out.meta.exceeds_at_end = cfg.settle_epsilon >= 0.0 && norm > cfg.settle_epsilon;
  return out;
}

std::vector<BatchResult> integrate_batch(const std::vector<BatchItem>& items) {
  std::vector<BatchResult> results;
  results.reserve(items.size());
  for (const BatchItem& item : items) {
    BatchResult r;
    try {
      r.trajectory = integrate(item.rhs, item.x0, item.cfg, item.label);
    } catch (const std::exception& e) {
      r.error = item.label.empty() ? e.what() : item.label + ": " + e.what();
    }
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace pts::sim

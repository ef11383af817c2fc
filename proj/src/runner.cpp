#include "pts/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include "pts/control.hpp"
#include "pts/csv.hpp"
#include "pts/systems.hpp"

namespace pts::runner {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

std::string sanitize(const std::string& name) {
  std::string out;
  out.reserve(name.size());
  for (char c : name) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
              (c >= '0' && c <= '9') || c == '-' || c == '_' || c == '.' ||
              c == '+';
    out.push_back(ok ? c : '-');
  }
  return out;
}

struct Built {
  systems::RhsFn rhs;
  std::optional<kappa::K1Function> gain_shape;  // set for tracking scenarios
  bool planar = false;
};

Built build(const scenario::Scenario& s) {
  Built b;
  switch (s.kind) {
    case scenario::SystemKind::FixedTime: {
      systems::FixedTimeSystem sys(s.rho[0], s.rho[1]);
      b.rhs = sys.vector_field();
      break;
    }
    case scenario::SystemKind::PredefinedTime: {
      systems::PredefinedTimeSystem sys =
          s.preset_tc > 0.0
              ? systems::PredefinedTimeSystem::preset(s.preset_tc)
              : systems::PredefinedTimeSystem(s.rho[0], s.rho[1], s.rho[2],
                                              s.rho[3], s.rho[4]);
      b.rhs = sys.vector_field();
      break;
    }
    case scenario::SystemKind::Tracking: {
      kappa::K1Function k = kappa::make_k1(s.kappa_family, s.kappa_params);
      control::ControllerParams params(s.ctrl_rho1, s.ctrl_rho2, s.ctrl_rho3,
                                       s.ctrl_rho4, k);
      systems::CircularReference ref(s.delta);
      b.rhs = control::closed_loop_error_rhs(params, ref.as_disturbance());
      b.gain_shape = k;
      b.planar = true;
      break;
    }
  }
  return b;
}

Eigen::VectorXd initial_state(double x0, bool planar) {
  if (!planar) {
    Eigen::VectorXd v(1);
    v << x0;
    return v;
  }
  // x0 is the initial error norm, applied along the diagonal.
  Eigen::VectorXd v(2);
  double c = x0 / std::sqrt(2.0);
  v << c, c;
  return v;
}

void append_check_lines(std::ostringstream& out, const RunRecord& r) {
  if (r.settling) {
    const auto& rep = *r.settling;
    out << "  settling: ";
    if (rep.settled)
      out << "settled at " << fmt(rep.settling_time);
    else
      out << "not settled";
    out << " (epsilon " << fmt(rep.epsilon) << ", dwell " << fmt(rep.dwell)
        << ", bound " << fmt(rep.bound_claimed) << ") "
        << (rep.satisfied ? "PASS" : "FAIL") << "\n";
  }
  if (r.ultimate) {
    const auto& ub = *r.ultimate;
    out << "  ultimate: max norm " << fmt(ub.max_norm_after) << " after t = "
        << fmt(ub.after) << " vs bound " << fmt(ub.bound);
    if (!std::isnan(ub.first_violation_time))
      out << " (first violation at " << fmt(ub.first_violation_time) << ")";
    out << " " << (ub.passed ? "PASS" : "FAIL") << "\n";
  }
  if (r.envelope) {
    const auto& env = *r.envelope;
    out << "  envelope: max violation " << fmt(env.max_violation)
        << " vs tolerance " << fmt(env.tolerance) << " "
        << (env.passed ? "PASS" : "FAIL") << "\n";
  }
}

}  // namespace

RunSummary run_scenarios(const std::vector<scenario::Scenario>& scenarios,
                         const std::string& out_dir) {
  if (!out_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec)
      throw std::runtime_error("cannot create output directory " + out_dir +
                               ": " + ec.message());
  }

  RunSummary summary;
  for (const scenario::Scenario& s : scenarios) {
    scenario::validate_scenario(s);
    Built built = build(s);

    for (double x0 : s.x0) {
      RunRecord record;
      record.scenario = s.name;
      record.x0 = x0;

      sim::IntegrationConfig cfg = s.cfg;
      if (s.settling) cfg.settle_epsilon = s.settling->epsilon;
      if (s.ultimate) {
        cfg.monitor_after = s.ultimate->tc;
        cfg.monitor_bound = s.ultimate->b + s.ultimate->slack;
      }

      auto t0 = std::chrono::steady_clock::now();
      try {
        Eigen::VectorXd state = initial_state(x0, built.planar);
        sim::Trajectory traj = sim::integrate(
            built.rhs, state, cfg, s.name + " x0=" + fmt(x0));
        record.ok = true;
        record.guard_activations = traj.meta.guard_activations;
        record.clamped = traj.meta.clamped;

        if (!out_dir.empty()) {
          std::filesystem::path path =
              std::filesystem::path(out_dir) /
              (sanitize(s.name) + "_x0-" + sanitize(fmt(x0)) + ".csv");
          csv::write_trajectory(path.string(), traj);
          record.csv_path = path.string();
        }

        bool passed = true;
        if (s.settling) {
          record.settling = analysis::settling_time(
              traj, s.settling->epsilon, s.settling->dwell, s.settling->bound);
          passed = passed && record.settling->satisfied;
        }
        if (s.ultimate) {
          record.ultimate = analysis::ultimate_bound_check(
              traj, s.ultimate->b, s.ultimate->tc, s.ultimate->slack);
          passed = passed && record.ultimate->passed;
        }
        if (s.envelope && built.gain_shape) {
          record.envelope = analysis::envelope_check(
              traj, *built.gain_shape, s.envelope->p, s.envelope->tc,
              s.envelope->tolerance);
          passed = passed && record.envelope->passed;
        }
        record.passed = passed;
      } catch (const std::exception& e) {
        record.ok = false;
        record.error = e.what();
        record.passed = false;
      }
      auto t1 = std::chrono::steady_clock::now();
      record.wall_seconds = std::chrono::duration<double>(t1 - t0).count();

      summary.all_passed = summary.all_passed && record.passed;
      summary.records.push_back(std::move(record));
    }
  }
  return summary;
}

std::string summary_text(const RunSummary& summary) {
  std::ostringstream out;
  for (const RunRecord& r : summary.records) {
    out << "scenario " << r.scenario << " x0=" << fmt(r.x0) << "\n";
    if (!r.ok) {
      out << "  error: " << r.error << "\n";
      continue;
    }
    if (!r.csv_path.empty()) out << "  csv: " << r.csv_path << "\n";
    out << "  wall: " << fmt(r.wall_seconds) << " s\n";
    if (r.guard_activations > 0)
      out << "  step-guard: " << r.guard_activations << " split steps\n";
    if (r.clamped) out << "  dead-band clamp engaged\n";
    append_check_lines(out, r);
    out << "  result: " << (r.passed ? "PASS" : "FAIL") << "\n";
  }
  out << "overall: " << (summary.all_passed ? "PASS" : "FAIL") << "\n";
  return out.str();
}

}  // namespace pts::runner

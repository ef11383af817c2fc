#pragma once

#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "pts/kappa.hpp"
#include "pts/sim.hpp"

// Flat text scenario files: a `[scenario]` line opens a scenario, `key =
// value` lines fill it in, `#` starts a comment.  List-valued keys take
// space-separated numbers.  No expressions are evaluated; systems and kappa
// families are picked by name from the built-in registry.

namespace pts::scenario {

enum class SystemKind { FixedTime, PredefinedTime, Tracking };

struct VerifySettling {
  double epsilon = 1e-4;
  double dwell = 0.05;
  double bound = std::numeric_limits<double>::infinity();
};

struct VerifyEnvelope {
  double p = 0.0;
  double tc = 1.0;
  double tolerance = 0.0;
};

struct VerifyUltimate {
  double b = 0.0;
  double tc = 1.0;
  double slack = 0.0;
};

struct Scenario {
  std::string name;
  SystemKind kind = SystemKind::FixedTime;

  // fixed_time: rho1 rho2; predefined_time: rho1..rho5 (or preset_tc > 0 to
  // derive the parameters for an exact settling bound preset_tc).
  std::vector<double> rho;
  double preset_tc = -1.0;

  // tracking only
  double ctrl_rho1 = 1.0;
  double ctrl_rho2 = 0.0;
  double ctrl_rho3 = 0.0;
  double ctrl_rho4 = 0.0;
  kappa::K1Family kappa_family = kappa::K1Family::ExpNeg;
  std::vector<double> kappa_params;
  double delta = 6.283185307179586;  // reference rate = disturbance bound

  // For 1-d benchmarks each entry is the initial state; for tracking it is
  // the initial error norm, applied along the diagonal direction.
  std::vector<double> x0;

  sim::IntegrationConfig cfg;

  std::optional<VerifySettling> settling;
  std::optional<VerifyEnvelope> envelope;
  std::optional<VerifyUltimate> ultimate;
};

// Throws std::runtime_error with "<source>:<line>: ..." diagnostics for
// syntax problems and std::invalid_argument for violated constraints.
std::vector<Scenario> parse_scenarios(std::istream& in,
                                      const std::string& source_name);
std::vector<Scenario> load_scenario_file(const std::string& path);

// Re-serializes into the file format parse_scenarios accepts.
std::string to_text(const std::vector<Scenario>& scenarios);

// Constraint checks that need cross-field context (system construction,
// verification coverage).  parse_scenarios runs this on every scenario.
void validate_scenario(const Scenario& s);

struct Preset {
  std::string name;
  std::string description;
  std::vector<Scenario> scenarios;
};

// Built-in presets: tracking-continuous, tracking-discontinuous,
// fixtime-sweep, predtime-sweep.  Names are unique.
const std::vector<Preset>& presets();
const Preset* find_preset(const std::string& name);

}  // namespace pts::scenario

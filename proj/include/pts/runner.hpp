#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pts/analysis.hpp"
#include "pts/scenario.hpp"

// Executes scenarios, writes one trajectory CSV per (scenario, x0), runs the
// requested verifications, and assembles a plain-text summary.  A diverging
// run is flagged in its record; the remaining runs still execute.

namespace pts::runner {

struct RunRecord {
  std::string scenario;
  double x0 = 0.0;
  std::string csv_path;
  bool ok = false;     // integration completed
  std::string error;   // populated when ok is false
  long long guard_activations = 0;
  bool clamped = false;
  double wall_seconds = 0.0;

  std::optional<analysis::SettlingReport> settling;
  std::optional<analysis::EnvelopeCheck> envelope;
  std::optional<analysis::BoundCheck> ultimate;

  bool passed = false;  // ok and every requested verification passed
};

struct RunSummary {
  std::vector<RunRecord> records;
  bool all_passed = true;
};

// out_dir must exist or be creatable; empty out_dir writes no CSV files.
RunSummary run_scenarios(const std::vector<scenario::Scenario>& scenarios,
                         const std::string& out_dir);

std::string summary_text(const RunSummary& summary);

}  // namespace pts::runner

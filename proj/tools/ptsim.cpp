#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "pts/runner.hpp"
#include "pts/scenario.hpp"

namespace {

int seed_presets(const std::string& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    std::cerr << "cannot create " << out_dir << ": " << ec.message() << "\n";
    return 2;
  }
  for (const pts::scenario::Preset& p : pts::scenario::presets()) {
    std::filesystem::path path =
        std::filesystem::path(out_dir) / (p.name + ".scn");
    std::ofstream out(path);
    out << "# " << p.description << "\n\n";
    out << pts::scenario::to_text(p.scenarios);
    if (!out) {
      std::cerr << "failed to write " << path.string() << "\n";
      return 2;
    }
    std::cout << "wrote " << path.string() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scenario runner for the settling-bound control toolkit"};
  app.require_subcommand(1);

  std::string scenario_file;
  std::string out_dir = "ptsim-out";
  std::string preset_name;
  double step_override = -1.0;
  bool seed = false;

  CLI::App* run = app.add_subcommand(
      "run", "Run scenarios from a file or a built-in preset");
  run->add_option("scenario-file", scenario_file,
                  "Scenario file (omit when using --preset)");
  run->add_option("--out", out_dir,
                  "Output directory for CSV trajectories and summary.txt")
      ->envname("PTSIM_OUT_DIR");
  run->add_option("--preset", preset_name, "Run a built-in preset by name");
  run->add_option("--step", step_override,
                  "Override the integration step of every scenario");
  run->add_flag("--seed-presets", seed,
                "Write every built-in preset as a .scn file into --out");

  CLI::App* list =
      app.add_subcommand("list", "List built-in presets with descriptions");

  CLI11_PARSE(app, argc, argv);

  if (list->parsed()) {
    for (const pts::scenario::Preset& p : pts::scenario::presets())
      std::cout << p.name << "\n    " << p.description << "\n";
    return 0;
  }

  if (seed) {
    int rc = seed_presets(out_dir);
    if (rc != 0 || (scenario_file.empty() && preset_name.empty())) return rc;
  }

  if (scenario_file.empty() == preset_name.empty()) {
    std::cerr << "run needs exactly one of: a scenario file, or --preset\n";
    return 2;
  }

  std::vector<pts::scenario::Scenario> scenarios;
  try {
    if (!preset_name.empty()) {
      const pts::scenario::Preset* p = pts::scenario::find_preset(preset_name);
      if (!p) {
        std::cerr << "unknown preset '" << preset_name
                  << "' (see `ptsim list`)\n";
        return 2;
      }
      scenarios = p->scenarios;
    } else {
      scenarios = pts::scenario::load_scenario_file(scenario_file);
    }
    if (step_override > 0.0) {
      for (pts::scenario::Scenario& s : scenarios) {
        s.cfg.step = step_override;
        pts::scenario::validate_scenario(s);
      }
    }
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  if (scenarios.empty()) {
    std::cout << "no scenarios; nothing to do\noverall: PASS\n";
    return 0;
  }

  try {
    pts::runner::RunSummary summary =
        pts::runner::run_scenarios(scenarios, out_dir);
    std::string text = pts::runner::summary_text(summary);
    std::cout << text;
    if (!out_dir.empty()) {
      std::filesystem::path path =
          std::filesystem::path(out_dir) / "summary.txt";
      std::ofstream out(path);
      out << text;
    }
    return summary.all_passed ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
}

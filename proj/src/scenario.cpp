#include "pts/scenario.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "pts/control.hpp"
#include "pts/systems.hpp"

namespace pts::scenario {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

[[noreturn]] void fail(const std::string& source, std::size_t line,
                       const std::string& msg) {
  throw std::runtime_error(source + ":" + std::to_string(line) + ": " + msg);
}

std::string trim(const std::string& s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<double> parse_numbers(const std::string& source, std::size_t line,
                                  const std::string& key,
                                  const std::string& value) {
  std::vector<double> out;
  const char* p = value.c_str();
  while (*p) {
    while (std::isspace(static_cast<unsigned char>(*p))) ++p;
    if (!*p) break;
    char* end = nullptr;
    double v = std::strtod(p, &end);
    if (end == p)
      fail(source, line, "key '" + key + "': expected a number, got '" +
                             std::string(p) + "'");
    out.push_back(v);
    p = end;
  }
  if (out.empty())
    fail(source, line, "key '" + key + "' needs at least one number");
  return out;
}

double parse_number(const std::string& source, std::size_t line,
                    const std::string& key, const std::string& value) {
  std::vector<double> v = parse_numbers(source, line, key, value);
  if (v.size() != 1)
    fail(source, line, "key '" + key + "' takes exactly one number");
  return v[0];
}

bool parse_bool(const std::string& source, std::size_t line,
                const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  fail(source, line, "key '" + key + "' expects true or false, got '" + value +
                         "'");
}

std::string kind_name(SystemKind kind) {
  switch (kind) {
    case SystemKind::FixedTime: return "fixed_time";
    case SystemKind::PredefinedTime: return "predefined_time";
    case SystemKind::Tracking: return "tracking";
  }
  return "?";
}

SystemKind parse_kind(const std::string& source, std::size_t line,
                      const std::string& value) {
  if (value == "fixed_time") return SystemKind::FixedTime;
  if (value == "predefined_time") return SystemKind::PredefinedTime;
  if (value == "tracking") return SystemKind::Tracking;
  fail(source, line, "unknown system '" + value +
                         "' (expected fixed_time, predefined_time, or "
                         "tracking)");
}

struct Builder {
  Scenario s;
  std::size_t start_line = 0;
  bool has_name = false;
  bool has_system = false;
  bool has_x0 = false;
  bool has_t_end = false;
};

void apply_key(Builder& b, const std::string& source, std::size_t line,
               const std::string& key, const std::string& value) {
  Scenario& s = b.s;
  if (key == "name") {
    s.name = value;
    b.has_name = true;
  } else if (key == "system") {
    s.kind = parse_kind(source, line, value);
    b.has_system = true;
  } else if (key == "rho") {
    s.rho = parse_numbers(source, line, key, value);
  } else if (key == "tc") {
    s.preset_tc = parse_number(source, line, key, value);
  } else if (key == "ctrl_rho1") {
    s.ctrl_rho1 = parse_number(source, line, key, value);
  } else if (key == "ctrl_rho2") {
    s.ctrl_rho2 = parse_number(source, line, key, value);
  } else if (key == "ctrl_rho3") {
    s.ctrl_rho3 = parse_number(source, line, key, value);
  } else if (key == "ctrl_rho4") {
    s.ctrl_rho4 = parse_number(source, line, key, value);
  } else if (key == "kappa") {
    try {
      s.kappa_family = kappa::parse_family(value);
    } catch (const std::invalid_argument& e) {
      fail(source, line, e.what());
    }
  } else if (key == "kappa_params") {
    s.kappa_params = parse_numbers(source, line, key, value);
  } else if (key == "delta") {
    s.delta = parse_number(source, line, key, value);
  } else if (key == "x0") {
    s.x0 = parse_numbers(source, line, key, value);
    b.has_x0 = true;
  } else if (key == "step") {
    s.cfg.step = parse_number(source, line, key, value);
  } else if (key == "t_end") {
    s.cfg.t_end = parse_number(source, line, key, value);
    b.has_t_end = true;
  } else if (key == "record_stride") {
    double v = parse_number(source, line, key, value);
    if (v < 1.0 || v != std::floor(v))
      fail(source, line, "record_stride must be a positive integer");
    s.cfg.record_stride = static_cast<int>(v);
  } else if (key == "deadband") {
    s.cfg.deadband_radius = parse_number(source, line, key, value);
  } else if (key == "clamp") {
    s.cfg.clamp_enabled = parse_bool(source, line, key, value);
  } else if (key == "guard") {
    s.cfg.guard_enabled = parse_bool(source, line, key, value);
  } else if (key == "method") {
    if (value == "euler")
      s.cfg.method = sim::Method::Euler;
    else if (value == "rk4")
      s.cfg.method = sim::Method::RK4;
    else
      fail(source, line, "method expects euler or rk4, got '" + value + "'");
  } else if (key == "verify_settling") {
    std::vector<double> v = parse_numbers(source, line, key, value);
    if (v.size() != 3)
      fail(source, line, "verify_settling takes: epsilon dwell bound");
    s.settling = VerifySettling{v[0], v[1], v[2]};
  } else if (key == "verify_envelope") {
    std::vector<double> v = parse_numbers(source, line, key, value);
    if (v.size() != 3)
      fail(source, line, "verify_envelope takes: p tc tolerance");
    s.envelope = VerifyEnvelope{v[0], v[1], v[2]};
  } else if (key == "verify_ultimate") {
    std::vector<double> v = parse_numbers(source, line, key, value);
    if (v.size() != 3)
      fail(source, line, "verify_ultimate takes: b tc slack");
    s.ultimate = VerifyUltimate{v[0], v[1], v[2]};
  } else {
    fail(source, line, "unknown key '" + key + "'");
  }
}

void finish(Builder& b, const std::string& source) {
  if (!b.has_name)
    fail(source, b.start_line, "scenario is missing required key 'name'");
  if (!b.has_system)
    fail(source, b.start_line,
         "scenario '" + b.s.name + "' is missing required key 'system'");
  if (!b.has_x0)
    fail(source, b.start_line,
         "scenario '" + b.s.name + "' is missing required key 'x0'");
  if (!b.has_t_end)
    fail(source, b.start_line,
         "scenario '" + b.s.name + "' is missing required key 't_end'");
  try {
    validate_scenario(b.s);
  } catch (const std::exception& e) {
    fail(source, b.start_line,
         "scenario '" + b.s.name + "': " + e.what());
  }
}

}  // namespace

void validate_scenario(const Scenario& s) {
  if (s.name.empty()) throw std::invalid_argument("empty scenario name");
  if (s.x0.empty()) throw std::invalid_argument("empty x0 list");
  for (double v : s.x0)
    if (!std::isfinite(v))
      throw std::invalid_argument("non-finite x0 entry");

  sim::validate(s.cfg);

  switch (s.kind) {
    case SystemKind::FixedTime: {
      if (s.rho.size() != 2)
        throw std::invalid_argument(
            "fixed_time needs rho with exactly 2 entries (rho1 rho2), got " +
            std::to_string(s.rho.size()));
      systems::FixedTimeSystem check(s.rho[0], s.rho[1]);
      (void)check;
      break;
    }
    case SystemKind::PredefinedTime: {
      bool by_rho = s.rho.size() == 5;
      bool by_tc = s.preset_tc > 0.0;
      if (by_rho == by_tc)
        throw std::invalid_argument(
            "predefined_time needs either rho with 5 entries or tc > 0, "
            "not both and not neither");
      if (by_rho) {
        systems::PredefinedTimeSystem check(s.rho[0], s.rho[1], s.rho[2],
                                            s.rho[3], s.rho[4]);
        (void)check;
      } else {
        systems::PredefinedTimeSystem check =
            systems::PredefinedTimeSystem::preset(s.preset_tc);
        (void)check;
      }
      break;
    }
    case SystemKind::Tracking: {
      for (double v : s.x0)
        if (!(v >= 0.0))
          throw std::invalid_argument(
              "tracking x0 entries are initial error norms and must be >= 0");
      kappa::K1Function k = kappa::make_k1(s.kappa_family, s.kappa_params);
      control::ControllerParams params(s.ctrl_rho1, s.ctrl_rho2, s.ctrl_rho3,
                                       s.ctrl_rho4, k);
      if (!(s.delta >= 0.0) || !std::isfinite(s.delta))
        throw std::invalid_argument("delta must be finite and >= 0");
      if (!(params.rho3 > s.delta))
        throw std::invalid_argument(
            "ctrl_rho3 = " + std::to_string(params.rho3) +
            " must exceed the disturbance bound delta = " +
            std::to_string(s.delta));
      break;
    }
  }

  if (s.settling) {
    if (!(s.settling->epsilon > 0.0))
      throw std::invalid_argument("verify_settling epsilon must be > 0");
    if (!(s.settling->dwell > 0.0))
      throw std::invalid_argument("verify_settling dwell must be > 0");
  }
  if (s.envelope) {
    if (s.kind != SystemKind::Tracking)
      throw std::invalid_argument(
          "verify_envelope needs a tracking scenario (it is stated in the "
          "controller's kappa coordinates)");
    if (!(s.envelope->p >= 0.0 && s.envelope->p < 1.0))
      throw std::invalid_argument("verify_envelope p must be in [0, 1)");
    if (!(s.envelope->tc > 0.0))
      throw std::invalid_argument("verify_envelope tc must be > 0");
  }
  if (s.ultimate) {
    if (!(s.ultimate->b >= 0.0))
      throw std::invalid_argument("verify_ultimate b must be >= 0");
    if (!(s.ultimate->slack >= 0.0))
      throw std::invalid_argument("verify_ultimate slack must be >= 0");
    if (!(s.ultimate->tc > 0.0))
      throw std::invalid_argument("verify_ultimate tc must be > 0");
    if (!(s.cfg.t_end > s.ultimate->tc))
      throw std::invalid_argument(
          "verify_ultimate needs t_end > tc, got t_end = " +
          std::to_string(s.cfg.t_end) + " and tc = " +
          std::to_string(s.ultimate->tc));
  }
}

std::vector<Scenario> parse_scenarios(std::istream& in,
                                      const std::string& source_name) {
  std::vector<Scenario> out;
  std::optional<Builder> current;
  std::string line;
  std::size_t line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string text = trim(line);
    if (text.empty()) continue;

    if (text.front() == '[') {
      if (text != "[scenario]")
        fail(source_name, line_no,
             "unknown section '" + text + "' (only [scenario] is allowed)");
      if (current) {
        finish(*current, source_name);
        out.push_back(std::move(current->s));
      }
      current.emplace();
      current->start_line = line_no;
      continue;
    }

    std::size_t eq = text.find('=');
    if (eq == std::string::npos)
      fail(source_name, line_no, "expected 'key = value', got '" + text + "'");
    if (!current)
      fail(source_name, line_no,
           "'key = value' before the first [scenario] section");
    std::string key = trim(text.substr(0, eq));
    std::string value = trim(text.substr(eq + 1));
    if (key.empty()) fail(source_name, line_no, "empty key");
    if (value.empty())
      fail(source_name, line_no, "key '" + key + "' has an empty value");
    apply_key(*current, source_name, line_no, key, value);
  }
  if (current) {
    finish(*current, source_name);
    out.push_back(std::move(current->s));
  }
  return out;
}

std::vector<Scenario> load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open scenario file " + path);
  return parse_scenarios(in, path);
}

std::string to_text(const std::vector<Scenario>& scenarios) {
  std::ostringstream out;
  for (const Scenario& s : scenarios) {
    out << "[scenario]\n";
    out << "name = " << s.name << "\n";
    out << "system = " << kind_name(s.kind) << "\n";
    if (s.kind == SystemKind::PredefinedTime && s.preset_tc > 0.0) {
      out << "tc = " << fmt17(s.preset_tc) << "\n";
    } else if (!s.rho.empty()) {
      out << "rho =";
      for (double v : s.rho) out << " " << fmt17(v);
      out << "\n";
    }
    if (s.kind == SystemKind::Tracking) {
      out << "ctrl_rho1 = " << fmt17(s.ctrl_rho1) << "\n";
      out << "ctrl_rho2 = " << fmt17(s.ctrl_rho2) << "\n";
      out << "ctrl_rho3 = " << fmt17(s.ctrl_rho3) << "\n";
      out << "ctrl_rho4 = " << fmt17(s.ctrl_rho4) << "\n";
      out << "kappa = " << kappa::family_name(s.kappa_family) << "\n";
      if (!s.kappa_params.empty()) {
        out << "kappa_params =";
        for (double v : s.kappa_params) out << " " << fmt17(v);
        out << "\n";
      }
      out << "delta = " << fmt17(s.delta) << "\n";
    }
    out << "x0 =";
    for (double v : s.x0) out << " " << fmt17(v);
    out << "\n";
    out << "step = " << fmt17(s.cfg.step) << "\n";
    out << "t_end = " << fmt17(s.cfg.t_end) << "\n";
    out << "record_stride = " << s.cfg.record_stride << "\n";
    out << "deadband = " << fmt17(s.cfg.deadband_radius) << "\n";
    out << "clamp = " << (s.cfg.clamp_enabled ? "true" : "false") << "\n";
    out << "guard = " << (s.cfg.guard_enabled ? "true" : "false") << "\n";
    out << "method = " << (s.cfg.method == sim::Method::RK4 ? "rk4" : "euler")
        << "\n";
    if (s.settling)
      out << "verify_settling = " << fmt17(s.settling->epsilon) << " "
          << fmt17(s.settling->dwell) << " " << fmt17(s.settling->bound)
          << "\n";
    if (s.envelope)
      out << "verify_envelope = " << fmt17(s.envelope->p) << " "
          << fmt17(s.envelope->tc) << " " << fmt17(s.envelope->tolerance)
          << "\n";
    if (s.ultimate)
      out << "verify_ultimate = " << fmt17(s.ultimate->b) << " "
          << fmt17(s.ultimate->tc) << " " << fmt17(s.ultimate->slack) << "\n";
    out << "\n";
  }
  return out.str();
}

}  // namespace pts::scenario

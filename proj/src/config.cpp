#include "psds/config.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>

#include "psds/builtins.hpp"
#include "psds/errors.hpp"

namespace psds {

const char* to_string(Command c) {
  switch (c) {
    case Command::Simulate: return "simulate";
    case Command::Bifurcate: return "bifurcate";
    case Command::Region: return "region";
    case Command::Confirm: return "confirm";
    case Command::Verify: return "verify";
  }
  return "unknown";
}

bool RunConfig::operator==(const RunConfig& o) const {
  return command == o.command && seed == o.seed && epsilon == o.epsilon &&
         output == o.output && system == o.system && integrator == o.integrator &&
         t_max == o.t_max &&
         ((!start && !o.start) || (start && o.start && start->x == o.start->x &&
                                   start->y == o.start->y)) &&
         region == o.region;
}

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',' || c == ' ' || c == '\t') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

struct Parser {
  std::vector<ParseDiagnostic>& errors;
  std::map<std::string, int> key_lines;

  void error(int line, const std::string& msg) { errors.push_back({line, msg}); }

  bool number(const std::string& text, int line, const std::string& key, double& out) {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0' || !std::isfinite(v)) {
      error(line, "value of '" + key + "' is not a finite number: '" + text + "'");
      return false;
    }
    out = v;
    return true;
  }

  bool integer(const std::string& text, int line, const std::string& key, int& out) {
    double v = 0.0;
    if (!number(text, line, key, v)) return false;
    if (v != std::floor(v)) {
      error(line, "value of '" + key + "' must be an integer");
      return false;
    }
    out = static_cast<int>(v);
    return true;
  }

  bool numbers(const std::string& text, int line, const std::string& key, std::size_t n,
               double* out) {
    const auto parts = split_list(text);
    if (parts.size() != n) {
      std::ostringstream os;
      os << "'" << key << "' expects " << n << " numbers, got " << parts.size();
      error(line, os.str());
      return false;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!number(parts[i], line, key, out[i])) return false;
    }
    return true;
  }
};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

ParseResult parse_config(const std::string& text) {
  ParseResult result;
  RunConfig cfg;
  Parser p{result.errors, {}};

  std::istringstream is(text);
  std::string raw;
  std::string section;
  int line_no = 0;
  bool saw_command = false;

  while (std::getline(is, raw)) {
    ++line_no;
    std::string line = raw;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') {
        p.error(line_no, "unterminated section header");
        continue;
      }
      section = trim(line.substr(1, line.size() - 2));
      if (section != "system" && section != "system.field" &&
          section != "system.field_minus" && section != "system.field_plus" &&
          section != "system.surface" && section != "system.reset" &&
          section != "integrator" && section != "region") {
        p.error(line_no, "unknown section [" + section + "]");
        section.clear();
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      p.error(line_no, "expected 'key = value'");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    p.key_lines[section.empty() ? key : section + "." + key] = line_no;

    auto unknown = [&] { p.error(line_no, "unknown key '" + key + "' in [" + section + "]"); };

    if (section.empty()) {
      if (key == "command") {
        saw_command = true;
        if (value == "simulate") cfg.command = Command::Simulate;
        else if (value == "bifurcate") cfg.command = Command::Bifurcate;
        else if (value == "region") cfg.command = Command::Region;
        else if (value == "confirm") cfg.command = Command::Confirm;
        else if (value == "verify") cfg.command = Command::Verify;
        else p.error(line_no, "unknown command '" + value + "'");
      } else if (key == "seed") {
        int seed = 0;
        if (p.integer(value, line_no, key, seed) && seed >= 0) {
          cfg.seed = static_cast<unsigned>(seed);
        }
      } else if (key == "epsilon") {
        const auto parts = split_list(value);
        cfg.epsilon.clear();
        for (const auto& part : parts) {
          double v = 0.0;
          if (p.number(part, line_no, key, v)) cfg.epsilon.push_back(v);
        }
        if (cfg.epsilon.empty()) p.error(line_no, "epsilon list is empty");
      } else if (key == "output") {
        cfg.output = value;
      } else if (key == "t_max") {
        p.number(value, line_no, key, cfg.t_max);
      } else if (key == "start") {
        double xy[2];
        if (p.numbers(value, line_no, key, 2, xy)) cfg.start = Vec2{xy[0], xy[1]};
      } else {
        unknown();
      }
    } else if (section == "system") {
      if (key == "builtin") cfg.system.builtin = value;
      else if (key == "class") cfg.system.system_class = value;
      else if (key == "a") p.number(value, line_no, key, cfg.system.a);
      else if (key == "b") p.number(value, line_no, key, cfg.system.b);
      else if (key == "k") p.number(value, line_no, key, cfg.system.k);
      else if (key == "m") p.number(value, line_no, key, cfg.system.m);
      else if (key == "quadratic") p.number(value, line_no, key, cfg.system.quadratic);
      else unknown();
    } else if (section == "system.field" || section == "system.field_minus" ||
               section == "system.field_plus") {
      auto& slot = section == "system.field"
                       ? cfg.system.field
                       : (section == "system.field_minus" ? cfg.system.field_minus
                                                          : cfg.system.field_plus);
      if (!slot) slot = std::make_pair(PolyCoeffs{}, PolyCoeffs{});
      if (key == "fx") p.numbers(value, line_no, key, 10, slot->first.data());
      else if (key == "fy") p.numbers(value, line_no, key, 10, slot->second.data());
      else unknown();
    } else if (section == "system.surface") {
      if (key == "h") {
        PolyCoeffs c{};
        if (p.numbers(value, line_no, key, 10, c.data())) cfg.system.surface_poly = c;
      } else if (key == "eps") {
        p.number(value, line_no, key, cfg.system.surface_eps_coeff);
      } else {
        unknown();
      }
    } else if (section == "system.reset") {
      if (key == "a") p.numbers(value, line_no, key, 3, cfg.system.reset_a.data());
      else if (key == "b") p.numbers(value, line_no, key, 3, cfg.system.reset_b.data());
      else unknown();
    } else if (section == "integrator") {
      if (key == "rel_tol") p.number(value, line_no, key, cfg.integrator.rel_tol);
      else if (key == "abs_tol") p.number(value, line_no, key, cfg.integrator.abs_tol);
      else if (key == "event_tolerance")
        p.number(value, line_no, key, cfg.integrator.event_tolerance);
      else if (key == "max_step") p.number(value, line_no, key, cfg.integrator.max_step);
      else if (key == "sweeping_step")
        p.number(value, line_no, key, cfg.integrator.sweeping_step);
      else if (key == "sample_dt") p.number(value, line_no, key, cfg.integrator.sample_dt);
      else if (key == "max_events")
        p.integer(value, line_no, key, cfg.integrator.max_events);
      else unknown();
    } else if (section == "region") {
      if (key == "test") cfg.region.test = value;
      else if (key == "axis1" || key == "axis2") {
        const auto parts = split_list(value);
        if (parts.size() != 4) {
          p.error(line_no, "'" + key + "' expects: name, from, to, steps");
        } else {
          double from = 0.0, to = 0.0;
          int steps = 0;
          if (p.number(parts[1], line_no, key, from) &&
              p.number(parts[2], line_no, key, to) &&
              p.integer(parts[3], line_no, key, steps)) {
            if (steps < 1) {
              p.error(line_no, "'" + key + "' needs a positive step count");
            } else if (key == "axis1") {
              cfg.region.axis1_name = parts[0];
              cfg.region.axis1_from = from;
              cfg.region.axis1_to = to;
              cfg.region.axis1_steps = steps;
            } else {
              cfg.region.axis2_name = parts[0];
              cfg.region.axis2_from = from;
              cfg.region.axis2_to = to;
              cfg.region.axis2_steps = steps;
            }
          }
        }
      } else {
        unknown();
      }
    }
  }

  if (!saw_command) p.error(0, "missing required key 'command'");

  // Late validation with the recorded line numbers.
  auto line_of = [&p](const std::string& key) {
    const auto it = p.key_lines.find(key);
    return it == p.key_lines.end() ? 0 : it->second;
  };
  const SystemConfig& sys = cfg.system;
  const bool needs_system = cfg.command == Command::Simulate ||
                            cfg.command == Command::Bifurcate ||
                            cfg.command == Command::Confirm;
  if (needs_system) {
    if (!sys.builtin.empty()) {
      if (sys.builtin == "neuron") {
        if (!(sys.a < 0.0)) p.error(line_of("system.a"), "neuron builtin requires a < 0");
        if (!(sys.b > 0.0)) p.error(line_of("system.b"), "neuron builtin requires b > 0");
        if (!(sys.k > 0.0)) p.error(line_of("system.k"), "neuron builtin requires k > 0");
      } else if (sys.builtin == "filippov-normal-form" ||
                 sys.builtin == "sweeping-halfplane") {
        if (!(sys.a > 0.0))
          p.error(line_of("system.a"), sys.builtin + " builtin requires a > 0");
        if (!(sys.b > 0.0))
          p.error(line_of("system.b"), sys.builtin + " builtin requires b > 0");
      } else {
        p.error(line_of("system.builtin"), "unknown builtin '" + sys.builtin + "'");
      }
    } else if (!sys.system_class.empty()) {
      if (sys.system_class != "impacting" && sys.system_class != "filippov" &&
          sys.system_class != "sweeping") {
        p.error(line_of("system.class"), "unknown system class '" + sys.system_class + "'");
      }
      if (!sys.surface_poly) {
        p.error(line_of("system.class"), "custom system needs a [system.surface] table");
      }
      if (sys.system_class == "filippov") {
        if (!sys.field_minus || !sys.field_plus) {
          p.error(line_of("system.class"),
                  "filippov system needs [system.field_minus] and [system.field_plus]");
        }
      } else if (!sys.field) {
        p.error(line_of("system.class"), "custom system needs a [system.field] table");
      }
    } else {
      p.error(0, "missing system description ([system] builtin or class)");
    }
  }
  if (cfg.command == Command::Region) {
    if (cfg.region.test != "neuron" && cfg.region.test != "filippov" &&
        cfg.region.test != "sweeping") {
      p.error(line_of("region.test"), "unknown region test '" + cfg.region.test + "'");
    }
  }

  if (result.errors.empty()) result.config = cfg;
  return result;
}

std::string render_config(const RunConfig& cfg) {
  std::ostringstream os;
  os << "command = " << to_string(cfg.command) << '\n';
  os << "seed = " << cfg.seed << '\n';
  os << "epsilon = ";
  for (std::size_t i = 0; i < cfg.epsilon.size(); ++i) {
    if (i) os << ", ";
    os << num(cfg.epsilon[i]);
  }
  os << '\n';
  os << "output = " << cfg.output << '\n';
  os << "t_max = " << num(cfg.t_max) << '\n';
  if (cfg.start) os << "start = " << num(cfg.start->x) << ", " << num(cfg.start->y) << '\n';

  os << "\n[system]\n";
  if (!cfg.system.builtin.empty()) os << "builtin = " << cfg.system.builtin << '\n';
  if (!cfg.system.system_class.empty()) os << "class = " << cfg.system.system_class << '\n';
  os << "a = " << num(cfg.system.a) << '\n';
  os << "b = " << num(cfg.system.b) << '\n';
  os << "k = " << num(cfg.system.k) << '\n';
  os << "m = " << num(cfg.system.m) << '\n';
  os << "quadratic = " << num(cfg.system.quadratic) << '\n';

  auto render_table = [&os](const char* name,
                            const std::optional<std::pair<PolyCoeffs, PolyCoeffs>>& table) {
    if (!table) return;
    os << "\n[" << name << "]\n";
    os << "fx =";
    for (double c : table->first) os << ' ' << num(c);
    os << "\nfy =";
    for (double c : table->second) os << ' ' << num(c);
    os << '\n';
  };
  render_table("system.field", cfg.system.field);
  render_table("system.field_minus", cfg.system.field_minus);
  render_table("system.field_plus", cfg.system.field_plus);
  if (cfg.system.surface_poly) {
    os << "\n[system.surface]\nh =";
    for (double c : *cfg.system.surface_poly) os << ' ' << num(c);
    os << "\neps = " << num(cfg.system.surface_eps_coeff) << '\n';
  }
  const bool has_reset = cfg.system.reset_a != std::array<double, 3>{} ||
                         cfg.system.reset_b != std::array<double, 3>{};
  if (has_reset) {
    os << "\n[system.reset]\na = " << num(cfg.system.reset_a[0]) << ' '
       << num(cfg.system.reset_a[1]) << ' ' << num(cfg.system.reset_a[2]) << '\n';
    os << "b = " << num(cfg.system.reset_b[0]) << ' ' << num(cfg.system.reset_b[1]) << ' '
       << num(cfg.system.reset_b[2]) << '\n';
  }

  os << "\n[integrator]\n";
  os << "rel_tol = " << num(cfg.integrator.rel_tol) << '\n';
  os << "abs_tol = " << num(cfg.integrator.abs_tol) << '\n';
  os << "event_tolerance = " << num(cfg.integrator.event_tolerance) << '\n';
  os << "max_step = " << num(cfg.integrator.max_step) << '\n';
  os << "sweeping_step = " << num(cfg.integrator.sweeping_step) << '\n';
  os << "sample_dt = " << num(cfg.integrator.sample_dt) << '\n';
  os << "max_events = " << cfg.integrator.max_events << '\n';

  os << "\n[region]\n";
  os << "test = " << cfg.region.test << '\n';
  os << "axis1 = " << cfg.region.axis1_name << ", " << num(cfg.region.axis1_from) << ", "
     << num(cfg.region.axis1_to) << ", " << cfg.region.axis1_steps << '\n';
  os << "axis2 = " << cfg.region.axis2_name << ", " << num(cfg.region.axis2_from) << ", "
     << num(cfg.region.axis2_to) << ", " << cfg.region.axis2_steps << '\n';
  return os.str();
}

SystemSpec build_system(const SystemConfig& sys) {
  if (sys.builtin == "neuron") {
    return make_neuron(sys.a, sys.b, sys.k, sys.quadratic);
  }
  if (sys.builtin == "filippov-normal-form") {
    return make_filippov_normal_form(sys.a, sys.b, sys.m, sys.quadratic);
  }
  if (sys.builtin == "sweeping-halfplane") {
    return make_sweeping_halfplane(sys.a, sys.b, sys.quadratic);
  }
  if (!sys.builtin.empty()) {
    throw DomainError("unknown builtin '" + sys.builtin + "'");
  }
  if (!sys.surface_poly) throw DomainError("custom system needs a surface table");
  const SwitchingSurface surface = polynomial_surface(*sys.surface_poly, sys.surface_eps_coeff);
  if (sys.system_class == "impacting") {
    if (!sys.field) throw DomainError("impacting system needs a field table");
    ImpactingSystem out;
    out.field = polynomial_field(sys.field->first, sys.field->second);
    out.surface = surface;
    const auto ra = sys.reset_a;
    const auto rb = sys.reset_b;
    out.reset = [ra, rb](double e) -> Vec2 {
      return {ra[0] * e + ra[1] * e * e + ra[2] * e * e * e,
              rb[0] * e + rb[1] * e * e + rb[2] * e * e * e};
    };
    return out;
  }
  if (sys.system_class == "filippov") {
    if (!sys.field_minus || !sys.field_plus) {
      throw DomainError("filippov system needs both field tables");
    }
    FilippovSystem out;
    out.field_minus = polynomial_field(sys.field_minus->first, sys.field_minus->second);
    out.field_plus = polynomial_field(sys.field_plus->first, sys.field_plus->second);
    out.surface = surface;
    return out;
  }
  if (sys.system_class == "sweeping") {
    if (!sys.field) throw DomainError("sweeping system needs a field table");
    SweepingProcess out;
    out.field = polynomial_field(sys.field->first, sys.field->second);
    out.surface = surface;
    return out;
  }
  throw DomainError("system description is incomplete");
}

}  // namespace psds

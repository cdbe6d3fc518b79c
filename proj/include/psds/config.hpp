#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "psds/integrate.hpp"
#include "psds/systems.hpp"

namespace psds {

enum class Command { Simulate, Bifurcate, Region, Confirm, Verify };

const char* to_string(Command c);

/// Declarative system description: a named builtin with parameters, or a
/// class plus polynomial coefficient tables (degree <= 3).
struct SystemConfig {
  std::string builtin;  // "neuron" | "filippov-normal-form" | "sweeping-halfplane" | ""
  std::string system_class;  // "impacting" | "filippov" | "sweeping" (custom systems)
  double a = 0.0, b = 1.0, k = 1.0, m = 0.0;
  double quadratic = 0.0;  // builtin nonlinearity toggle

  // Custom tables.
  std::optional<std::pair<PolyCoeffs, PolyCoeffs>> field;        // impacting / sweeping
  std::optional<std::pair<PolyCoeffs, PolyCoeffs>> field_minus;  // filippov
  std::optional<std::pair<PolyCoeffs, PolyCoeffs>> field_plus;
  std::optional<PolyCoeffs> surface_poly;
  double surface_eps_coeff = -1.0;
  std::array<double, 3> reset_a{};  // A(e) = a1 e + a2 e^2 + a3 e^3
  std::array<double, 3> reset_b{};

  bool operator==(const SystemConfig&) const = default;
};

struct RegionConfig {
  std::string test = "sweeping";  // neuron | filippov | sweeping
  std::string axis1_name = "ratio";
  double axis1_from = 0.05, axis1_to = 1.0;
  int axis1_steps = 50;
  std::string axis2_name = "m";
  double axis2_from = 0.0, axis2_to = 0.0;
  int axis2_steps = 1;

  bool operator==(const RegionConfig&) const = default;
};

struct IntegratorConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double event_tolerance = 1e-11;
  double max_step = 0.0;
  double sweeping_step = 1e-4;
  double sample_dt = 0.0;
  int max_events = 100;

  bool operator==(const IntegratorConfig&) const = default;
  IntegratorOptions options() const {
    return {rel_tol, abs_tol, event_tolerance, max_step, sweeping_step, sample_dt,
            max_events};
  }
};

struct RunConfig {
  Command command = Command::Bifurcate;
  unsigned seed = 0;
  std::vector<double> epsilon{1e-2};
  std::string output = "out";
  SystemConfig system;
  IntegratorConfig integrator;
  double t_max = 20.0;
  std::optional<Vec2> start;
  RegionConfig region;

  bool operator==(const RunConfig& o) const;
};

struct ParseDiagnostic {
  int line = 0;
  std::string message;
};

struct ParseResult {
  std::optional<RunConfig> config;
  std::vector<ParseDiagnostic> errors;

  bool ok() const { return config.has_value() && errors.empty(); }
};

/// Parses the declarative config format (nested key/value sections). Returns
/// either a validated config or the list of located errors.
ParseResult parse_config(const std::string& text);

/// Canonical rendering; parse_config(render_config(c)) == c for valid configs.
std::string render_config(const RunConfig& config);

/// Instantiates the in-memory system from a description. Throws DomainError
/// on invalid parameter combinations.
SystemSpec build_system(const SystemConfig& config);

}  // namespace psds

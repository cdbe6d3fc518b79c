#include "psds/report.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace psds {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::CyclePredicted: return "cycle-predicted";
    case Verdict::NotPredicted: return "not-predicted";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string render_report(const BifurcationReport& report) {
  std::ostringstream os;
  os << "system_class = " << to_string(report.system_class) << '\n';
  os << "verdict = " << to_string(report.verdict) << '\n';
  os << "jacobian = " << num(report.reduced.jacobian.a00) << ' '
     << num(report.reduced.jacobian.a01) << ' ' << num(report.reduced.jacobian.a10) << ' '
     << num(report.reduced.jacobian.a11) << '\n';
  os << "reset_u = " << num(report.reduced.reset_u) << '\n';
  os << "line_level = " << num(report.reduced.line_level) << '\n';
  if (report.tangency_slope) {
    os << "A_prime = " << num(report.tangency_slope->x) << '\n';
    os << "B_prime = " << num(report.tangency_slope->y) << '\n';
  }
  if (report.equilibrium_slope) {
    os << "a_prime = " << num(report.equilibrium_slope->a) << '\n';
    os << "b_prime = " << num(report.equilibrium_slope->b) << '\n';
    os << "lambda_prime = " << num(report.equilibrium_slope->c) << '\n';
  }
  if (report.cycle) {
    os << "T0 = " << num(report.cycle->period) << '\n';
    os << "landing_u = " << num(report.cycle->landing_u) << '\n';
  }
  for (const auto& c : report.checks) {
    os << "hypothesis." << c.name << " = "
       << (c.passed ? "pass" : (c.borderline ? "borderline" : "fail")) << '\n';
    os << "hypothesis." << c.name << ".value = " << num(c.value) << '\n';
  }
  for (const auto& [key, value] : report.diagnostics) {
    os << "diag." << key << " = " << num(value) << '\n';
  }
  if (report.confirmation) {
    const auto& c = *report.confirmation;
    os << "confirmation.epsilon = " << num(c.epsilon) << '\n';
    os << "confirmation.period = " << num(c.period) << '\n';
    os << "confirmation.flight_time = " << num(c.flight_time) << '\n';
    os << "confirmation.closure_error = " << num(c.closure_error) << '\n';
    os << "confirmation.landing = " << num(c.landing.x) << ' ' << num(c.landing.y) << '\n';
  }
  return os.str();
}

std::string render_report_json(const BifurcationReport& report) {
  nlohmann::ordered_json j;
  j["system_class"] = to_string(report.system_class);
  j["verdict"] = to_string(report.verdict);
  j["reduced"] = {{"jacobian",
                   {report.reduced.jacobian.a00, report.reduced.jacobian.a01,
                    report.reduced.jacobian.a10, report.reduced.jacobian.a11}},
                  {"reset_u", report.reduced.reset_u},
                  {"line_level", report.reduced.line_level}};
  if (report.tangency_slope) {
    j["tangency_slope"] = {report.tangency_slope->x, report.tangency_slope->y};
  }
  if (report.equilibrium_slope) {
    j["equilibrium_slope"] = {report.equilibrium_slope->a, report.equilibrium_slope->b,
                              report.equilibrium_slope->c};
  }
  if (report.cycle) {
    j["cycle"] = {{"T0", report.cycle->period}, {"landing_u", report.cycle->landing_u}};
  }
  auto& checks = j["hypotheses"] = nlohmann::ordered_json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name},
                      {"passed", c.passed},
                      {"borderline", c.borderline},
                      {"value", c.value}});
  }
  if (!report.diagnostics.empty()) {
    j["diagnostics"] = report.diagnostics;
  }
  if (report.confirmation) {
    const auto& c = *report.confirmation;
    j["confirmation"] = {{"epsilon", c.epsilon},
                         {"period", c.period},
                         {"flight_time", c.flight_time},
                         {"closure_error", c.closure_error},
                         {"landing", {c.landing.x, c.landing.y}}};
  }
  return j.dump(2) + "\n";
}

}  // namespace psds

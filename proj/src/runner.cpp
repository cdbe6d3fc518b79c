#include "psds/runner.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "psds/acceptance.hpp"
#include "psds/engine.hpp"
#include "psds/normal_form.hpp"

namespace psds {

namespace {

std::string eps_tag(double eps) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%g", eps);
  std::string tag = buf;
  for (char& c : tag) {
    if (c == '.' || c == '+') c = '_';
    if (c == '-') c = 'm';
  }
  return tag;
}

void write_file(const std::filesystem::path& path, const std::string& content,
                std::vector<std::string>& artifacts) {
  std::ofstream os(path, std::ios::binary);
  os << content;
  artifacts.push_back(path.string());
}

Vec2 simulation_start(const SystemSpec& spec, const RunConfig& cfg, double eps) {
  if (cfg.start) return *cfg.start;
  if (const auto* imp = std::get_if<ImpactingSystem>(&spec)) return imp->reset(eps);
  return solve_tangency(minus_field(spec), surface_of(spec), eps).point;
}

Trajectory simulate_any(const SystemSpec& spec, Vec2 s0, double eps, double t_max,
                        const IntegratorOptions& opts) {
  return std::visit(
      [&](const auto& sys) -> Trajectory {
        using T = std::decay_t<decltype(sys)>;
        if constexpr (std::is_same_v<T, ImpactingSystem>) {
          return simulate_impacting(sys, s0, eps, t_max, opts);
        } else if constexpr (std::is_same_v<T, FilippovSystem>) {
          return simulate_filippov(sys, s0, eps, t_max, opts);
        } else {
          return simulate_sweeping(sys, s0, eps, t_max, opts);
        }
      },
      spec);
}

int run_region(const RunConfig& cfg, const std::filesystem::path& dir,
               std::vector<std::string>& artifacts) {
  const RegionConfig& rc = cfg.region;
  std::function<std::optional<bool>(double, double)> test;
  if (rc.test == "neuron") {
    test = [](double ratio, double k) -> std::optional<bool> {
      if (!(ratio < 0.0) || !(k > 0.0)) return std::nullopt;
      return neuron_region_test(ratio, k);
    };
  } else if (rc.test == "filippov") {
    test = [](double ratio, double m) -> std::optional<bool> {
      if (!(ratio > 0.0)) return std::nullopt;
      return filippov_region_test(ratio, m);
    };
  } else {
    test = [](double ratio, double) -> std::optional<bool> {
      if (!(ratio > 0.0)) return std::nullopt;
      return sweeping_region_test(ratio);
    };
  }
  const AxisSpec axis1{rc.axis1_name, rc.axis1_from, rc.axis1_to, rc.axis1_steps};
  const AxisSpec axis2{rc.axis2_name, rc.axis2_from, rc.axis2_to, rc.axis2_steps};
  const RegionGrid grid = region_grid(test, axis1, axis2);
  write_file(dir / ("region_" + rc.test + ".csv"), to_csv(grid), artifacts);
  return 0;
}

}  // namespace

RunResult run(const RunConfig& cfg, const std::string& output_dir, std::ostream& out,
              std::ostream& err) {
  RunResult result;
  const std::filesystem::path dir = output_dir.empty() ? cfg.output : output_dir;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    err << "cannot create output directory " << dir << ": " << ec.message() << "\n";
    result.exit_code = 2;
    return result;
  }

  try {
    switch (cfg.command) {
      case Command::Simulate: {
        const SystemSpec spec = build_system(cfg.system);
        for (double eps : cfg.epsilon) {
          if (eps <= 0.0) {
            err << "simulate requires eps > 0 (got " << eps << ")\n";
            result.exit_code = 2;
            return result;
          }
          const Vec2 s0 = simulation_start(spec, cfg, eps);
          const Trajectory traj =
              simulate_any(spec, s0, eps, cfg.t_max, cfg.integrator.options());
          write_file(dir / ("trajectory_eps" + eps_tag(eps) + ".csv"), to_csv(traj),
                     result.artifacts);
        }
        break;
      }
      case Command::Bifurcate: {
        const SystemSpec spec = build_system(cfg.system);
        const BifurcationReport report = check_system(spec);
        write_file(dir / "report.txt", render_report(report), result.artifacts);
        write_file(dir / "report.json", render_report_json(report), result.artifacts);
        out << render_report(report);
        result.exit_code = report.verdict == Verdict::CyclePredicted ? 0 : 1;
        break;
      }
      case Command::Region:
        result.exit_code = run_region(cfg, dir, result.artifacts);
        break;
      case Command::Confirm: {
        const SystemSpec spec = build_system(cfg.system);
        BifurcationReport report = check_system(spec);
        for (double eps : cfg.epsilon) {
          if (eps <= 0.0) {
            err << "confirm requires eps > 0 (got " << eps << ")\n";
            result.exit_code = 2;
            return result;
          }
          const ConfirmationRecord rec = confirm_cycle(spec, eps, cfg.integrator.options());
          report.confirmation = rec;
          write_file(dir / ("cycle_eps" + eps_tag(eps) + ".csv"), to_csv(rec.trajectory),
                     result.artifacts);
        }
        write_file(dir / "report.txt", render_report(report), result.artifacts);
        write_file(dir / "report.json", render_report_json(report), result.artifacts);
        out << render_report(report);
        break;
      }
      case Command::Verify: {
        const auto results = acceptance::run_all(out);
        result.exit_code = acceptance::all_passed(results) ? 0 : 1;
        break;
      }
    }
  } catch (const DomainError& e) {
    err << "input error: " << e.what() << "\n";
    result.exit_code = 2;
  } catch (const Error& e) {
    err << "analysis failed: " << e.what() << "\n";
    result.exit_code = 1;
  }
  return result;
}

}  // namespace psds

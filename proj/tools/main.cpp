#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "psds/runner.hpp"

namespace {

std::string read_file(const std::string& path, bool& ok) {
  std::ifstream is(path, std::ios::binary);
  if (!is) {
    ok = false;
    return {};
  }
  std::ostringstream os;
  os << is.rdbuf();
  ok = true;
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Planar piecewise-smooth dynamics: simulation and boundary-equilibrium "
               "bifurcation analysis"};
  app.require_subcommand(0, 1);

  std::string config_path;
  std::string output_dir;
  long long seed = -1;
  std::string epsilon_list;

  const std::vector<std::string> names = {"simulate", "bifurcate", "region", "confirm",
                                          "verify"};
  for (const auto& name : names) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "path to the run configuration file");
    sub->add_option("--output", output_dir, "output directory (overrides the config)");
    sub->add_option("--seed", seed, "probe seed (overrides the config)");
    sub->add_option("--epsilon", epsilon_list,
                    "comma-separated epsilon values (overrides the config)");
  }

  CLI11_PARSE(app, argc, argv);

  if (app.get_subcommands().empty()) {
    std::cerr << app.help();
    return 2;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  psds::RunConfig cfg;
  if (!config_path.empty()) {
    bool ok = false;
    const std::string text = read_file(config_path, ok);
    if (!ok) {
      std::cerr << "cannot read config file '" << config_path << "'\n";
      return 2;
    }
    const psds::ParseResult parsed = psds::parse_config(text);
    for (const auto& diag : parsed.errors) {
      std::cerr << config_path << ":" << diag.line << ": " << diag.message << "\n";
    }
    if (!parsed.ok()) return 2;
    cfg = *parsed.config;
  } else if (command != "verify") {
    std::cerr << "--config is required for '" << command << "'\n";
    return 2;
  }

  // The subcommand on the command line overrides the config's command field.
  if (command == "simulate") cfg.command = psds::Command::Simulate;
  else if (command == "bifurcate") cfg.command = psds::Command::Bifurcate;
  else if (command == "region") cfg.command = psds::Command::Region;
  else if (command == "confirm") cfg.command = psds::Command::Confirm;
  else cfg.command = psds::Command::Verify;

  if (seed >= 0) cfg.seed = static_cast<unsigned>(seed);
  if (!epsilon_list.empty()) {
    cfg.epsilon.clear();
    std::istringstream is(epsilon_list);
    std::string item;
    while (std::getline(is, item, ',')) {
      try {
        cfg.epsilon.push_back(std::stod(item));
      } catch (const std::exception&) {
        std::cerr << "bad --epsilon value '" << item << "'\n";
        return 2;
      }
    }
  }

  const psds::RunResult result =
      psds::run(cfg, output_dir.empty() ? cfg.output : output_dir, std::cout, std::cerr);
  return result.exit_code;
}

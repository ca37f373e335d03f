#include <cstdio>
#include <exception>
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "dramcell/observations.hpp"
#include "dramcell/version.hpp"

using namespace dramcell;
using namespace dramcell::cli;

int main(int argc, char** argv) {
  CLI::App app{"Cell-level DRAM leakage and read-disturbance analyzer"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string config_path;
  FlagOverrides flags;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "Config file (INI sections)");
    sub->add_option("--seed", flags.seed, "Deterministic run seed");
    sub->add_option("--out", flags.out, "Output directory");
    sub->add_option("--profile", flags.profile, "Device profile (D1..D7|custom)");
    sub->add_option("--mechanism", flags.mechanism,
                    "retention|rowhammer|rowpress");
    sub->add_option("--pattern", flags.pattern, "111|010|all1|checker|both");
    sub->add_option("--n", flags.n, "Population size");
  };

  CLI::App* sim = app.add_subcommand(
      "simulate", "Stress a sampled cell population and record flips");
  add_common(sim);
  CLI::App* ext = app.add_subcommand(
      "extract", "Recover (R_S, R_B) / R_S(N) from a simulation or trace");
  add_common(ext);
  ext->add_option("--in", flags.in, "Observations CSV (default: live sim)");
  CLI::App* ana = app.add_subcommand(
      "analyze", "Score populations and qualify attack surfaces");
  add_common(ana);
  ana->add_option("--in", flags.in, "Extraction CSV population source");
  CLI::App* rep = app.add_subcommand(
      "report", "Render a comparison report from analyze outputs");
  add_common(rep);
  rep->add_option("--in", flags.in, "Analyze output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    app.exit(e);
    return kExitConfig;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    ConfigDoc doc;
    if (!config_path.empty()) doc = load_config_file(config_path);
    const RunConfig cfg = resolve_config(command, doc, flags);
    if (command == "simulate") return cmd_simulate(cfg);
    if (command == "extract") return cmd_extract(cfg);
    if (command == "analyze") return cmd_analyze(cfg);
    return cmd_report(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const InvalidParameter& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ObservationParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible analysis: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

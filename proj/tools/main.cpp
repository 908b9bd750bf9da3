#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "bdglab/gauge.hpp"
#include "cli/config.hpp"
#include "cli/experiments.hpp"
#include "cli/report.hpp"
#include "cli/suite.hpp"

namespace cli = bdglab::cli;

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo checks of maximal and BDG-type inequalities"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  bool fast = false;
  auto* run = app.add_subcommand("run", "run one experiment config");
  run->add_option("config", config_path, "JSON experiment config")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "output directory (overrides BDGLAB_OUTPUT_DIR)");
  run->add_flag("--fast", fast, "divide Monte Carlo replicates by 10");

  std::optional<std::uint64_t> seed;
  auto* verify = app.add_subcommand("verify-paper", "run the full verification suite");
  verify->add_flag("--fast", fast, "divide Monte Carlo replicates by 10");
  verify->add_option("--out", out_dir, "output directory (overrides BDGLAB_OUTPUT_DIR)");
  verify->add_option("--seed", seed, "root seed for every experiment");

  auto* gauges = app.add_subcommand("list-gauges", "print the gauge registry");
  auto* experiments = app.add_subcommand("list-experiments", "print the experiment kinds");

  CLI11_PARSE(app, argc, argv);

  const std::optional<std::string> flag = out_dir.empty() ? std::nullopt : std::optional<std::string>(out_dir);
  try {
    if (*gauges) {
      for (const auto& g : bdglab::gauge_registry()) std::cout << g.name << "\t" << g.formula << "\n";
      return 0;
    }
    if (*experiments) {
      for (const auto& e : cli::experiment_catalog()) {
        std::cout << e.name << "\t" << (e.monte_carlo ? "mc" : "exact") << "\t" << e.description << "\n";
      }
      return 0;
    }
    if (*run) {
      const cli::ExperimentConfig cfg = cli::load_config(config_path);
      std::string dir = cli::resolve_output_dir(flag);
      if (!flag && !std::getenv("BDGLAB_OUTPUT_DIR") && cfg.output) dir = *cfg.output;
      const auto rows = cli::run_experiment(cfg, cli::RunOptions{fast});
      const auto files = cli::emit_report(rows, dir, cfg.experiment);
      cli::write_summary(std::cout, rows);
      std::cout << "wrote " << files.csv << "\n";
      return cli::all_pass(rows) ? 0 : 1;
    }
    if (*verify) {
      const auto outcome = cli::verify_paper(cli::resolve_output_dir(flag), fast, seed);
      cli::write_summary(std::cout, outcome.rows);
      std::cout << "wrote " << outcome.files.csv << "\n";
      return outcome.pass ? 0 : 1;
    }
  } catch (const cli::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

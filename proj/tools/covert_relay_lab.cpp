// covert-relay-lab: evaluate, simulate, and optimize the covert-rate
// performance of a two-hop relay network with cooperative jamming.
//
// Subcommands:
//   metrics    closed forms at one parameter point, key/value table
//   simulate   Monte Carlo estimators, CSV rows with confidence intervals
//   optimize   constrained covert-rate maximization over P_T, plus trace CSV
//   reproduce  canned parameter sweeps (fig2..fig7), one CSV per curve
//
// Exit codes: 0 success, 1 configuration/validation error, 2 runtime error.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "crl/config.hpp"
#include "crl/experiments.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_path;
  bool no_timestamp = false;
  std::uint64_t seed = 0;
  bool seed_set = false;
  long long trials = 0;
  bool trials_set = false;
  int workers = 0;
  bool workers_set = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--config", o.config_path, "JSON configuration file")->required();
  cmd->add_option("--out", o.out_path, "output file (or directory for reproduce)");
  cmd->add_flag("--no-timestamp", o.no_timestamp, "omit the timestamp comment line");
  cmd->add_option("--seed", o.seed, "override sim.seed")->each([&o](const std::string&) {
    o.seed_set = true;
  });
  cmd->add_option("--trials", o.trials, "override sim.trials")->each([&o](const std::string&) {
    o.trials_set = true;
  });
  cmd->add_option("--workers", o.workers, "override sim.workers")
      ->each([&o](const std::string&) { o.workers_set = true; });
}

int load_or_fail(const CommonOpts& o, crl::ExperimentConfig& cfg) {
  std::vector<std::string> issues;
  cfg = crl::load_config(o.config_path, issues);
  if (o.seed_set) cfg.sim.seed = o.seed;
  if (o.trials_set) {
    cfg.sim.trials = o.trials;
    if (o.trials < 1) issues.emplace_back("sim.trials: must be >= 1");
  }
  if (o.workers_set) {
    cfg.sim.workers = o.workers;
    if (o.workers < 1) issues.emplace_back("sim.workers: must be >= 1");
  }
  if (!issues.empty()) {
    std::cerr << "configuration error:\n";
    for (const auto& s : issues) std::cerr << "  " << s << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"covert-rate analysis for a jamming-assisted two-hop relay network"};
  app.require_subcommand(1);

  CommonOpts metrics_opts, simulate_opts, optimize_opts, reproduce_opts;
  std::string figure;

  CLI::App* metrics = app.add_subcommand("metrics", "closed forms at one parameter point");
  add_common(metrics, metrics_opts);
  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo estimators, CSV output");
  add_common(simulate, simulate_opts);
  CLI::App* optimize = app.add_subcommand("optimize", "maximize covert rate over P_T");
  add_common(optimize, optimize_opts);
  CLI::App* reproduce = app.add_subcommand("reproduce", "emit data behind a figure");
  reproduce->add_option("figure", figure, "fig2|fig3|fig4|fig5|fig6|fig7")->required();
  add_common(reproduce, reproduce_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;  // usage problems are validation errors
  }

  try {
    if (metrics->parsed()) {
      crl::ExperimentConfig cfg;
      if (int rc = load_or_fail(metrics_opts, cfg)) return rc;
      const std::string table = crl::run_metrics(cfg);
      std::cout << table;
      if (!metrics_opts.out_path.empty()) {
        crl::CsvWriter csv(!metrics_opts.no_timestamp);
        csv.header({"key", "value"});
        std::istringstream in(table);
        std::string line;
        while (std::getline(in, line)) {
          const auto split = line.find_first_of(" \t");
          const auto rest = line.find_first_not_of(" \t", split);
          csv.cell(line.substr(0, split)).cell(rest == std::string::npos ? "" : line.substr(rest));
          csv.end_row();
        }
        csv.save(metrics_opts.out_path);
      }
      return 0;
    }
    if (simulate->parsed()) {
      crl::ExperimentConfig cfg;
      if (int rc = load_or_fail(simulate_opts, cfg)) return rc;
      crl::CsvWriter csv = crl::run_simulate(cfg, !simulate_opts.no_timestamp);
      const std::string path =
          !simulate_opts.out_path.empty() ? simulate_opts.out_path : cfg.output_path;
      if (path.empty()) {
        std::cout << csv.str();
      } else {
        csv.save(path);
        std::cout << "wrote " << path << "\n";
      }
      return 0;
    }
    if (optimize->parsed()) {
      crl::ExperimentConfig cfg;
      if (int rc = load_or_fail(optimize_opts, cfg)) return rc;
      crl::OptimizeOutput out = crl::run_optimize(cfg, !optimize_opts.no_timestamp);
      std::cout << out.summary;
      const std::string path =
          !optimize_opts.out_path.empty() ? optimize_opts.out_path : cfg.output_path;
      if (!path.empty()) {
        out.trace.save(path);
        std::cout << "trace " << path << "\n";
      }
      return 0;
    }
    if (reproduce->parsed()) {
      crl::ExperimentConfig cfg;
      if (int rc = load_or_fail(reproduce_opts, cfg)) return rc;
      const std::string outdir =
          !reproduce_opts.out_path.empty() ? reproduce_opts.out_path : std::string("out");
      const auto files =
          crl::run_reproduce(figure, cfg, outdir, !reproduce_opts.no_timestamp);
      for (const auto& f : files) std::cout << "wrote " << f << "\n";
      return 0;
    }
  } catch (const crl::invalid_parameter& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

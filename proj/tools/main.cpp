// Command-line front end: run experiments, validate configuration files, or
// execute the built-in demo comparison.
#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "stabilizer/config.hpp"
#include "stabilizer/harness.hpp"
#include "stabilizer/report.hpp"

namespace {

using stabilizer::Arm;
using stabilizer::ConfigError;
using stabilizer::ExperimentConfig;
using stabilizer::ExperimentResult;

void print_summary(const ExperimentConfig& config, const ExperimentResult& result) {
  const char* prior = config.prior_mode == stabilizer::PriorMode::Uniform ? "uniform"
                      : config.prior_mode == stabilizer::PriorMode::Configured
                          ? "configured"
                          : "sequential";
  std::printf("experiment: %d qubits, %ld shots, %d runs, seed %llu, %s prior\n",
              config.qubits, config.shots, config.runs,
              static_cast<unsigned long long>(config.seed), prior);
  for (Arm arm : config.arms) {
    int completed = 0;
    int failed = 0;
    for (const auto& row : result.rows) {
      if (row.arm != arm) continue;
      (row.ok ? completed : failed) += 1;
    }
    const stabilizer::StabilityReport* report = nullptr;
    for (const auto& [summary_arm, summary] : result.summaries) {
      if (summary_arm == arm) report = &summary;
    }
    if (report != nullptr) {
      std::printf("  %-12s mean %.4f  std %.4f  (%d/%d runs)\n",
                  stabilizer::arm_name(arm), report->mean, report->std_dev, completed,
                  completed + failed);
    } else {
      std::printf("  %-12s no completed runs (%d failed)\n", stabilizer::arm_name(arm),
                  failed);
    }
  }
  for (const auto& row : result.rows) {
    if (!row.ok) {
      std::printf("  [%s run %d failed: %s]\n", stabilizer::arm_name(row.arm),
                  row.run + 1, row.error.c_str());
    }
  }
}

int run_and_export(const ExperimentConfig& config) {
  const ExperimentResult result = stabilizer::run_experiment(config);
  stabilizer::export_experiment(result, config);
  print_summary(config, result);
  std::printf("wrote %s/results.csv, %s/summary.json, %s/comparison.svg\n",
              config.out_dir.c_str(), config.out_dir.c_str(), config.out_dir.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stabilizer: simulates a qubit register with drifting readout and "
               "rotation errors, infers the error parameters from measured "
               "bitstrings, and compares unmitigated, static, and adaptive "
               "error compensation"};
  app.require_subcommand(1);

  // run
  std::string config_path;
  std::uint64_t seed = 0;
  int runs = 0;
  long shots = 0;
  long chain_steps = 0;
  std::string prior;
  std::string out_dir;
  std::vector<std::string> arms;
  CLI::App* run_cmd = app.add_subcommand("run", "run an experiment from a config file");
  run_cmd->add_option("--config", config_path, "configuration file path")->required();
  CLI::Option* seed_opt = run_cmd->add_option("--seed", seed, "override the root seed");
  CLI::Option* runs_opt = run_cmd->add_option("--runs", runs, "override the run count");
  CLI::Option* shots_opt = run_cmd->add_option("--shots", shots, "override shots per execution");
  CLI::Option* steps_opt =
      run_cmd->add_option("--chain-steps", chain_steps, "override the MCMC step count");
  CLI::Option* arms_opt =
      run_cmd->add_option("--arms", arms, "arms to run (unmitigated,static,adaptive)")
          ->delimiter(',');
  CLI::Option* prior_opt =
      run_cmd->add_option("--prior", prior, "prior mode (uniform|configured|sequential)");
  CLI::Option* out_opt = run_cmd->add_option("--out", out_dir, "output directory");

  // validate-config
  std::string validate_path;
  CLI::App* validate_cmd =
      app.add_subcommand("validate-config", "parse and validate a config file");
  validate_cmd->add_option("path", validate_path, "configuration file path")->required();

  // demo
  std::string demo_out;
  CLI::App* demo_cmd =
      app.add_subcommand("demo", "run the built-in three-arm default experiment");
  CLI::Option* demo_out_opt = demo_cmd->add_option("--out", demo_out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;  // bad command line counts as a configuration error
  }

  try {
    if (*validate_cmd) {
      const ExperimentConfig config = stabilizer::load_config(validate_path);
      std::printf("configuration ok: %d qubits, %ld shots, %d runs, %zu arm(s)\n",
                  config.qubits, config.shots, config.runs, config.arms.size());
      return 0;
    }

    ExperimentConfig config;
    if (*run_cmd) {
      config = stabilizer::load_config(config_path);
      if (seed_opt->count() > 0) config.seed = seed;
      if (runs_opt->count() > 0) config.runs = runs;
      if (shots_opt->count() > 0) config.shots = shots;
      if (steps_opt->count() > 0) config.chain_steps = chain_steps;
      if (prior_opt->count() > 0) {
        if (prior == "uniform") {
          config.prior_mode = stabilizer::PriorMode::Uniform;
        } else if (prior == "configured") {
          config.prior_mode = stabilizer::PriorMode::Configured;
        } else if (prior == "sequential") {
          config.prior_mode = stabilizer::PriorMode::Sequential;
        } else {
          throw ConfigError("prior mode must be uniform, configured, or sequential");
        }
      }
      if (arms_opt->count() > 0) {
        config.arms.clear();
        for (const std::string& a : arms) {
          if (a == "unmitigated") {
            config.arms.push_back(Arm::Unmitigated);
          } else if (a == "static") {
            config.arms.push_back(Arm::Static);
          } else if (a == "adaptive") {
            config.arms.push_back(Arm::Adaptive);
          } else {
            throw ConfigError("unknown arm '" + a + "'");
          }
        }
      }
      if (out_opt->count() > 0) config.out_dir = out_dir;
      stabilizer::validate_config(config);
    } else {
      config = stabilizer::default_config();
      if (demo_out_opt->count() > 0) config.out_dir = demo_out;
    }
    return run_and_export(config);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}

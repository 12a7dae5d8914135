#include "stabilizer/harness.hpp"

#include <exception>

#include "stabilizer/mitigation.hpp"
#include "stabilizer/rng.hpp"
#include "stabilizer/simulator.hpp"

namespace stabilizer {

namespace {

// Stream labels for seed derivation. Drift omits the arm component (see
// draw_run_noise); every other stream is private to its (arm, run).
namespace seed_phase {
constexpr std::uint64_t kDrift = 1;
constexpr std::uint64_t kProbe = 2;
constexpr std::uint64_t kScored = 3;
constexpr std::uint64_t kChain = 4;
}  // namespace seed_phase

std::uint64_t arm_id(Arm arm) { return static_cast<std::uint64_t>(arm); }

ChainConfig chain_config(const ExperimentConfig& config) {
  return ChainConfig{config.chain_steps, config.burn_in_fraction,
                     config.proposal_scales};
}

double score_against_ideal(const OutcomeDistribution& observed, int n) {
  return hellinger(observed, ideal_distribution(n));
}

}  // namespace

std::vector<ErrorParams> draw_run_noise(const ExperimentConfig& config, int run) {
  const DriftModel model = build_drift_model(config);
  std::mt19937_64 engine = make_engine(derive_seed(
      config.seed, {seed_phase::kDrift, static_cast<std::uint64_t>(run)}));
  return sample_drift(model, engine);
}

RunRecord run_unmitigated(const ExperimentConfig& config, int run) {
  RunRecord record;
  record.arm = Arm::Unmitigated;
  record.run = run;
  record.truth = draw_run_noise(config, run);

  std::mt19937_64 engine = make_engine(
      derive_seed(config.seed, {seed_phase::kScored, arm_id(Arm::Unmitigated),
                                static_cast<std::uint64_t>(run)}));
  const std::vector<double> no_offsets(record.truth.size(), 0.0);
  const ShotCounts counts = execute(record.truth, no_offsets, config.shots, engine);
  record.distance = score_against_ideal(counts_to_distribution(counts), config.qubits);
  record.ok = true;
  return record;
}

RunRecord run_static(const ExperimentConfig& config, int run) {
  RunRecord record;
  record.arm = Arm::Static;
  record.run = run;
  record.truth = draw_run_noise(config, run);

  std::mt19937_64 engine = make_engine(
      derive_seed(config.seed, {seed_phase::kScored, arm_id(Arm::Static),
                                static_cast<std::uint64_t>(run)}));
  const ShotCounts counts = execute(record.truth, config.e2_mean, config.shots, engine);

  std::vector<ErrorParams> mean_params;
  mean_params.reserve(static_cast<std::size_t>(config.qubits));
  for (int q = 0; q < config.qubits; ++q) {
    const auto i = static_cast<std::size_t>(q);
    mean_params.push_back(ErrorParams{config.e0_mean[i], config.e1_mean[i],
                                      config.e2_mean[i]});
  }
  const OutcomeDistribution mitigated =
      invert_readout(counts_to_distribution(counts), mean_params);
  record.distance = score_against_ideal(mitigated, config.qubits);
  record.ok = true;
  return record;
}

RunRecord run_adaptive(const ExperimentConfig& config, int run, PriorSpec& prior_state,
                       const std::vector<ErrorParams>* map_override) {
  RunRecord record;
  record.arm = Arm::Adaptive;
  record.run = run;
  record.truth = draw_run_noise(config, run);
  const auto run_index = static_cast<std::uint64_t>(run);

  // Probe: observe the register as-is.
  std::mt19937_64 probe_engine = make_engine(derive_seed(
      config.seed, {seed_phase::kProbe, arm_id(Arm::Adaptive), run_index}));
  const std::vector<double> no_offsets(record.truth.size(), 0.0);
  const ShotCounts probe = execute(record.truth, no_offsets, config.shots, probe_engine);

  // Infer the error parameters from the probe's bitstrings.
  std::vector<std::uint64_t> qubit_seeds;
  qubit_seeds.reserve(static_cast<std::size_t>(config.qubits));
  for (int q = 0; q < config.qubits; ++q) {
    qubit_seeds.push_back(derive_seed(config.seed,
                                      {seed_phase::kChain, arm_id(Arm::Adaptive),
                                       run_index, static_cast<std::uint64_t>(q)}));
  }
  RegisterInference inference =
      infer_register(probe, prior_state, chain_config(config), qubit_seeds);
  if (config.prior_mode == PriorMode::Sequential) {
    prior_state = sequential_prior_update(inference.chains);
  }
  record.estimate = inference.map;
  record.has_estimate = true;
  if (map_override != nullptr) {
    record.estimate.params = *map_override;
  }

  // Re-execute with the estimated angle corrections, then undo the estimated
  // readout flips.
  std::mt19937_64 scored_engine = make_engine(derive_seed(
      config.seed, {seed_phase::kScored, arm_id(Arm::Adaptive), run_index}));
  const ShotCounts scored = execute(record.truth, compensation_offsets(record.estimate),
                                    config.shots, scored_engine);
  const OutcomeDistribution mitigated =
      invert_readout(counts_to_distribution(scored), record.estimate.params);
  record.distance = score_against_ideal(mitigated, config.qubits);
  record.ok = true;
  return record;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  validate_config(config);

  ExperimentResult result;
  result.rows.reserve(config.arms.size() * static_cast<std::size_t>(config.runs));
  for (Arm arm : config.arms) {
    PriorSpec prior_state = initial_prior(config);
    std::vector<double> completed_distances;
    completed_distances.reserve(static_cast<std::size_t>(config.runs));
    for (int run = 0; run < config.runs; ++run) {
      RunRecord record;
      try {
        switch (arm) {
          case Arm::Unmitigated:
            record = run_unmitigated(config, run);
            break;
          case Arm::Static:
            record = run_static(config, run);
            break;
          case Arm::Adaptive:
            record = run_adaptive(config, run, prior_state);
            break;
        }
      } catch (const std::exception& ex) {
        record.arm = arm;
        record.run = run;
        record.ok = false;
        record.error = ex.what();
      }
      if (record.ok) {
        completed_distances.push_back(record.distance);
      }
      result.rows.push_back(std::move(record));
    }
    if (!completed_distances.empty()) {
      result.summaries.emplace_back(arm, stability_report(completed_distances));
    }
  }
  return result;
}

}  // namespace stabilizer

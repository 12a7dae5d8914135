#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "stabilizer/inference.hpp"
#include "stabilizer/noise.hpp"

namespace stabilizer {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The three experiment arms, in canonical execution order.
enum class Arm { Unmitigated = 0, Static = 1, Adaptive = 2 };

const char* arm_name(Arm arm);

// Full experiment description. Angles are stored in radians; the config file
// accepts degrees (the default unit) or radians via `e2_unit`. A standard
// deviation of zero declares a parameter that holds its mean exactly instead
// of drifting.
struct ExperimentConfig {
  int qubits = 4;
  long shots = 8192;
  int runs = 10;
  std::uint64_t seed = 1;

  // Per-qubit drift means/standard deviations for (e0, e1, e2).
  std::vector<double> e0_mean;
  std::vector<double> e0_std;
  std::vector<double> e1_mean;
  std::vector<double> e1_std;
  std::vector<double> e2_mean;  // radians
  std::vector<double> e2_std;   // radians

  long chain_steps = 10000;
  double burn_in_fraction = 0.2;
  std::array<double, 3> proposal_scales{0.02, 0.02, 0.01};
  PriorMode prior_mode = PriorMode::Uniform;

  std::vector<Arm> arms{Arm::Unmitigated, Arm::Static, Arm::Adaptive};
  std::string out_dir = "results";
};

// Built-in defaults: a 4-qubit register with strongly asymmetric readout
// (e0 means 0.90/0.80/0.85/0.75, e1 means 0.85/0.75/0.80/0.70), rotation
// offsets of 3.1/4.1/4.9/2.9 degrees, and every standard deviation set to
// one tenth of its mean. For other register sizes the four-value pattern
// repeats cyclically.
ExperimentConfig default_config(int qubits = 4);

// Parses a key = value configuration file (see README for the schema).
// Unknown or duplicate keys are errors. Throws ConfigError.
ExperimentConfig load_config(const std::string& path);

// Validates ranges, list lengths, and drift variance bounds. Throws
// ConfigError with a descriptive message.
void validate_config(const ExperimentConfig& config);

// Drift model implied by the configuration: beta-distributed entries from
// (mean, std) moment matching, held-fixed entries where std = 0.
DriftModel build_drift_model(const ExperimentConfig& config);

// Prior for the first adaptive run: uniform shapes for the uniform and
// sequential modes, the drift model's own shapes for the configured mode
// (held-fixed drift entries fall back to uniform, having no beta form).
PriorSpec initial_prior(const ExperimentConfig& config);

}  // namespace stabilizer

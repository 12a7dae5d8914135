#pragma once

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "stabilizer/config.hpp"
#include "stabilizer/inference.hpp"
#include "stabilizer/metrics.hpp"
#include "stabilizer/noise.hpp"

namespace stabilizer {

// One (arm, run) outcome. Failed runs carry the error message instead of a
// distance; adaptive runs additionally carry the inferred estimate.
struct RunRecord {
  Arm arm = Arm::Unmitigated;
  int run = 0;
  bool ok = false;
  double distance = std::numeric_limits<double>::quiet_NaN();
  std::vector<ErrorParams> truth;  // drifted parameters used by the run
  bool has_estimate = false;
  MapEstimate estimate;
  std::string error;
};

struct ExperimentResult {
  std::vector<RunRecord> rows;  // ordered by (arm, run)
  std::vector<std::pair<Arm, StabilityReport>> summaries;  // arms with >= 1 completed run
};

// Per-run drifted noise. The seed path deliberately excludes the arm, so all
// arms of one run index see the same drift realization and their distances
// compare like-for-like.
std::vector<ErrorParams> draw_run_noise(const ExperimentConfig& config, int run);

// No compensation, no post-processing: execute and score against the ideal
// uniform distribution.
RunRecord run_unmitigated(const ExperimentConfig& config, int run);

// Compensate with the configured e2 means and invert the readout with the
// configured e0/e1 means — the best one can do from pre-characterized
// distributions while the actual parameters drift.
RunRecord run_static(const ExperimentConfig& config, int run);

// Probe execution -> per-qubit MAP inference -> compensated re-execution ->
// readout inversion with the inferred flips. The drift realization is held
// constant across both executions of the run. In sequential prior mode,
// prior_state is advanced in place from the run's chains. map_override, when
// non-null, replaces the inferred parameter triples (a test hook for scoring
// the loop with oracle estimates).
RunRecord run_adaptive(const ExperimentConfig& config, int run, PriorSpec& prior_state,
                       const std::vector<ErrorParams>* map_override = nullptr);

// Runs every configured arm for every run index with isolated, derived
// seeds. Per-run failures (e.g. a singular readout channel) are recorded in
// their row and the experiment continues.
ExperimentResult run_experiment(const ExperimentConfig& config);

}  // namespace stabilizer

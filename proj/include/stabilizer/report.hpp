#pragma once

#include <string>

#include "stabilizer/config.hpp"
#include "stabilizer/harness.hpp"

namespace stabilizer {

// Renders a double with snprintf's %.9g: enough digits to be meaningful,
// locale-independent, and byte-stable for a fixed input.
std::string format_double(double value);

// results.csv body: header `arm,run,hellinger,e0_true_q1..qn,...,error`, one
// row per (arm, run). Estimate and acceptance cells are empty for
// non-adaptive arms; failed rows carry the sanitized error message.
std::string results_csv(const ExperimentResult& result, int n);

// summary.json body: configuration echo plus per-arm mean/std over completed
// runs.
std::string summary_json(const ExperimentResult& result, const ExperimentConfig& config);

// comparison.svg body: per-arm mean bars with +/-1 std whiskers and
// individual run markers.
std::string comparison_svg(const ExperimentResult& result);

// Writes results.csv, summary.json, and comparison.svg into config.out_dir,
// creating the directory if needed. Throws std::runtime_error on I/O
// failure.
void export_experiment(const ExperimentResult& result, const ExperimentConfig& config);

}  // namespace stabilizer

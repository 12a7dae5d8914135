#pragma once

#include <vector>

#include "stabilizer/simulator.hpp"

namespace stabilizer {

// Bhattacharyya coefficient sum_i sqrt(f_i g_i), clamped to [0, 1] against
// round-off. Both inputs must have the same outcome count and be normalized
// (sum within 1e-6 of 1).
double bhattacharyya(const OutcomeDistribution& f, const OutcomeDistribution& g);

// Hellinger distance sqrt(1 - BC(f, g)): 0 for identical distributions,
// 1 for disjoint supports, and a metric in between.
double hellinger(const OutcomeDistribution& f, const OutcomeDistribution& g);

// Summary statistics for a series of per-run distances, plus the sample
// variance of an optional scalar observable series.
struct StabilityReport {
  std::vector<double> distances;
  double mean = 0.0;
  double std_dev = 0.0;  // sample standard deviation (n-1); 0 for a single run
  bool has_observable_variance = false;
  double observable_variance = 0.0;
};

StabilityReport stability_report(const std::vector<double>& distances);
StabilityReport stability_report(const std::vector<double>& distances,
                                 const std::vector<double>& observables);

}  // namespace stabilizer

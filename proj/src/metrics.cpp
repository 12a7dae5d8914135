#include "stabilizer/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace stabilizer {

namespace {

void check_normalized(const OutcomeDistribution& d, const char* label) {
  double sum = 0.0;
  for (double p : d.probs) sum += p;
  if (std::abs(sum - 1.0) > 1e-6) {
    throw std::invalid_argument(std::string(label) +
                                " distribution is not normalized (sum = " +
                                std::to_string(sum) + ")");
  }
}

double sample_mean(const std::vector<double>& xs) {
  double m = 0.0;
  for (double x : xs) m += x;
  return m / static_cast<double>(xs.size());
}

// Sample variance with n-1 denominator; defined as 0 for a single value.
double sample_variance(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double m = sample_mean(xs);
  double v = 0.0;
  for (double x : xs) v += (x - m) * (x - m);
  return v / static_cast<double>(xs.size() - 1);
}

}  // namespace

double bhattacharyya(const OutcomeDistribution& f, const OutcomeDistribution& g) {
  if (f.probs.size() != g.probs.size()) {
    throw std::invalid_argument("distributions must have equal outcome counts");
  }
  check_normalized(f, "first");
  check_normalized(g, "second");
  double bc = 0.0;
  for (std::size_t i = 0; i < f.probs.size(); ++i) {
    // Clipped mitigated distributions are nonnegative by contract; guard the
    // square root against stray round-off below zero anyway.
    bc += std::sqrt(std::max(f.probs[i], 0.0) * std::max(g.probs[i], 0.0));
  }
  return std::clamp(bc, 0.0, 1.0);
}

double hellinger(const OutcomeDistribution& f, const OutcomeDistribution& g) {
  return std::sqrt(std::max(0.0, 1.0 - bhattacharyya(f, g)));
}

StabilityReport stability_report(const std::vector<double>& distances) {
  if (distances.empty()) {
    throw std::invalid_argument("stability report requires at least one distance");
  }
  StabilityReport report;
  report.distances = distances;
  report.mean = sample_mean(distances);
  report.std_dev = std::sqrt(sample_variance(distances));
  return report;
}

StabilityReport stability_report(const std::vector<double>& distances,
                                 const std::vector<double>& observables) {
  StabilityReport report = stability_report(distances);
  if (observables.empty()) {
    throw std::invalid_argument("observable series must not be empty");
  }
  report.has_observable_variance = true;
  report.observable_variance = sample_variance(observables);
  return report;
}

}  // namespace stabilizer

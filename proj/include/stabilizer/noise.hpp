#pragma once

#include <array>
#include <random>
#include <stdexcept>
#include <vector>

namespace stabilizer {

// One qubit's error triple. e0 = P(read 1 | qubit ends in 0) and
// e1 = P(read 0 | qubit ends in 1) parametrize the asymmetric readout
// channel; e2 is a coherent offset (radians) on the mixing-gate angle.
struct ErrorParams {
  double e0 = 0.0;
  double e1 = 0.0;
  double e2 = 0.0;
};

// Physically admissible range: flip probabilities in [0, 1], rotation offset
// within +/- pi/4.
bool params_in_range(const ErrorParams& e);

// Beta-distribution shape pair; both parameters strictly positive.
struct BetaSpec {
  double alpha = 1.0;
  double beta = 1.0;

  double mean() const { return alpha / (alpha + beta); }
  double variance() const {
    const double s = alpha + beta;
    return alpha * beta / (s * s * (s + 1.0));
  }
};

struct DriftSpecError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct FitError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// One drifting parameter: either a beta distribution or a held-fixed value.
// The fixed form covers the zero-variance case, which no beta distribution
// with an interior mean can represent (e.g. a noiseless register).
struct DriftEntry {
  bool fixed = false;
  double value = 0.0;  // used when fixed
  BetaSpec shape;      // used otherwise

  static DriftEntry fixed_value(double v) { return DriftEntry{true, v, {}}; }
  static DriftEntry distributed(BetaSpec s) { return DriftEntry{false, 0.0, s}; }
};

// Per-qubit drift distributions for (e0, e1, e2). e2 draws are interpreted
// directly as radians; configured means sit well inside the beta support.
struct DriftModel {
  int n = 0;
  std::vector<std::array<DriftEntry, 3>> entries;  // [qubit][parameter]
};

// Moment matching: returns the unique BetaSpec whose analytic mean and
// standard deviation equal the inputs. Throws DriftSpecError when the mean
// is not interior to (0, 1) or the variance bound std^2 < mean(1-mean) fails.
BetaSpec beta_from_mean_std(double mean, double std_dev);

// Draws one value from a beta distribution (two gamma variates); the result
// is clamped to lie strictly inside (0, 1).
double sample_beta(const BetaSpec& spec, std::mt19937_64& engine);

// Draws a fresh noise realization for the whole register: one independent
// value per qubit per parameter, in (qubit-major, parameter-minor) order.
// Rotation offsets are capped at pi/4 so every returned triple satisfies
// params_in_range; for realistic drift specs the cap is never reached.
std::vector<ErrorParams> sample_drift(const DriftModel& model, std::mt19937_64& engine);

// Moment-matched fit from samples strictly inside (0, 1). Throws FitError on
// fewer than two samples, boundary values, zero variance, or sample variance
// at or above the mean(1-mean) bound.
BetaSpec fit_beta_moments(const std::vector<double>& samples);

}  // namespace stabilizer

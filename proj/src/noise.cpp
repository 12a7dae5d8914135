#include "stabilizer/noise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace stabilizer {

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;

// Largest interval representable strictly inside (0, 1) in double precision.
constexpr double kOpenLow = std::numeric_limits<double>::min();
const double kOpenHigh = 1.0 - std::numeric_limits<double>::epsilon() / 2.0;

}  // namespace

bool params_in_range(const ErrorParams& e) {
  return e.e0 >= 0.0 && e.e0 <= 1.0 && e.e1 >= 0.0 && e.e1 <= 1.0 &&
         std::abs(e.e2) <= kQuarterPi;
}

BetaSpec beta_from_mean_std(double mean, double std_dev) {
  if (!(mean > 0.0 && mean < 1.0)) {
    throw DriftSpecError("beta mean must lie strictly inside (0, 1), got " +
                         std::to_string(mean));
  }
  if (!(std_dev > 0.0)) {
    throw DriftSpecError("beta standard deviation must be positive, got " +
                         std::to_string(std_dev));
  }
  const double variance = std_dev * std_dev;
  const double bound = mean * (1.0 - mean);
  if (!(variance < bound)) {
    throw DriftSpecError("beta variance bound violated: std^2 = " +
                         std::to_string(variance) + " >= mean(1-mean) = " +
                         std::to_string(bound));
  }
  // Solve the two moment equations: mean = a/(a+b), var = ab/((a+b)^2 (a+b+1)).
  const double kappa = bound / variance - 1.0;
  return BetaSpec{mean * kappa, (1.0 - mean) * kappa};
}

double sample_beta(const BetaSpec& spec, std::mt19937_64& engine) {
  std::gamma_distribution<double> ga(spec.alpha, 1.0);
  std::gamma_distribution<double> gb(spec.beta, 1.0);
  const double x = ga(engine);
  const double y = gb(engine);
  const double sum = x + y;
  // Both variates underflowing to zero is only reachable for extreme shape
  // parameters; fall back to the distribution mean rather than divide by zero.
  if (!(sum > 0.0)) {
    return spec.mean();
  }
  return std::clamp(x / sum, kOpenLow, kOpenHigh);
}

std::vector<ErrorParams> sample_drift(const DriftModel& model, std::mt19937_64& engine) {
  if (model.n <= 0 || model.entries.size() != static_cast<std::size_t>(model.n)) {
    throw std::invalid_argument("drift model must hold exactly one entry triple per qubit");
  }
  std::vector<ErrorParams> out;
  out.reserve(model.entries.size());
  for (const auto& qubit : model.entries) {
    std::array<double, 3> drawn{};
    for (int k = 0; k < 3; ++k) {
      const DriftEntry& entry = qubit[k];
      drawn[k] = entry.fixed ? entry.value : sample_beta(entry.shape, engine);
    }
    // Beta support already keeps e0/e1 inside [0, 1]; cap the angle draw so
    // the triple stays within the admissible rotation range.
    drawn[2] = std::min(drawn[2], kQuarterPi);
    out.push_back(ErrorParams{drawn[0], drawn[1], drawn[2]});
  }
  return out;
}

BetaSpec fit_beta_moments(const std::vector<double>& samples) {
  if (samples.size() < 2) {
    throw FitError("beta fit requires at least two samples");
  }
  for (double s : samples) {
    if (!(s > 0.0 && s < 1.0)) {
      throw FitError("beta fit requires samples strictly inside (0, 1)");
    }
  }
  const double n = static_cast<double>(samples.size());
  double mean = 0.0;
  for (double s : samples) mean += s;
  mean /= n;
  double variance = 0.0;
  for (double s : samples) variance += (s - mean) * (s - mean);
  variance /= n - 1.0;
  if (!(variance > 0.0)) {
    throw FitError("beta fit is degenerate: samples have zero variance");
  }
  const double bound = mean * (1.0 - mean);
  if (!(variance < bound)) {
    throw FitError("beta fit is degenerate: sample variance exceeds mean(1-mean)");
  }
  const double kappa = bound / variance - 1.0;
  return BetaSpec{mean * kappa, (1.0 - mean) * kappa};
}

}  // namespace stabilizer

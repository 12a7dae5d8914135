#include "stabilizer/mitigation.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace stabilizer {

namespace {

constexpr double kSingularTolerance = 1e-6;

std::string singular_message(int qubit, double flip_sum) {
  char buf[96];
  std::snprintf(buf, sizeof buf,
                "readout channel for qubit q%d is singular (e0 + e1 = %.6f)",
                qubit + 1, flip_sum);
  return buf;
}

}  // namespace

MitigationSingularError::MitigationSingularError(int qubit, double flip_sum)
    : std::runtime_error(singular_message(qubit, flip_sum)), qubit_(qubit) {}

ConfusionMatrix confusion_matrix(double e0, double e1) {
  if (!(e0 >= 0.0 && e0 <= 1.0 && e1 >= 0.0 && e1 <= 1.0)) {
    throw std::invalid_argument("flip probabilities must lie in [0, 1]");
  }
  return ConfusionMatrix{1.0 - e0, e1, e0, 1.0 - e1};
}

bool is_invertible(const ConfusionMatrix& m, double tolerance) {
  return std::abs(m.determinant()) > tolerance;
}

OutcomeDistribution invert_readout(const OutcomeDistribution& dist,
                                   const std::vector<ErrorParams>& estimates) {
  if (dist.n < 1 || dist.probs.size() != (std::size_t{1} << dist.n)) {
    throw std::invalid_argument("distribution does not cover 2^n outcomes");
  }
  if (estimates.size() != static_cast<std::size_t>(dist.n)) {
    throw std::invalid_argument("expected one error estimate per qubit");
  }

  std::vector<double> probs = dist.probs;
  for (int q = 0; q < dist.n; ++q) {
    const double e0 = estimates[static_cast<std::size_t>(q)].e0;
    const double e1 = estimates[static_cast<std::size_t>(q)].e1;
    const double det = 1.0 - e0 - e1;
    if (std::abs(det) <= kSingularTolerance) {
      throw MitigationSingularError(q, e0 + e1);
    }
    // Closed-form 2x2 inverse of [[1-e0, e1], [e0, 1-e1]].
    const double inv00 = (1.0 - e1) / det;
    const double inv01 = -e1 / det;
    const double inv10 = -e0 / det;
    const double inv11 = (1.0 - e0) / det;

    // Contract the inverse into the distribution along qubit q's axis: pair
    // up the outcomes that differ only in bit q.
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t base = 0; base < probs.size(); ++base) {
      if (base & bit) {
        continue;
      }
      const double zero_part = probs[base];
      const double one_part = probs[base | bit];
      probs[base] = inv00 * zero_part + inv01 * one_part;
      probs[base | bit] = inv10 * zero_part + inv11 * one_part;
    }
  }

  // The inverse of a column-stochastic map preserves total mass, so the raw
  // vector sums to 1; clipping is only needed when sampling noise pushed an
  // entry negative, and renormalization restores the invariant afterwards.
  bool clipped = false;
  double remaining = 0.0;
  for (double& p : probs) {
    if (p < 0.0) {
      p = 0.0;
      clipped = true;
    }
    remaining += p;
  }
  if (clipped) {
    for (double& p : probs) {
      p /= remaining;
    }
  }
  return OutcomeDistribution{dist.n, std::move(probs)};
}

std::vector<double> compensation_offsets(const MapEstimate& estimate) {
  std::vector<double> offsets;
  offsets.reserve(estimate.params.size());
  for (const ErrorParams& e : estimate.params) {
    offsets.push_back(e.e2);
  }
  return offsets;
}

}  // namespace stabilizer

#pragma once

#include <stdexcept>
#include <vector>

#include "stabilizer/inference.hpp"
#include "stabilizer/noise.hpp"
#include "stabilizer/simulator.hpp"

namespace stabilizer {

// Column-stochastic 2x2 readout channel for one qubit: columns are true
// states, rows observed states, entries [[1-e0, e1], [e0, 1-e1]]. The
// determinant 1 - e0 - e1 vanishes exactly when the channel destroys all
// state information.
struct ConfusionMatrix {
  double p00 = 1.0;  // P(observe 0 | true 0)
  double p01 = 0.0;  // P(observe 0 | true 1)
  double p10 = 0.0;  // P(observe 1 | true 0)
  double p11 = 1.0;  // P(observe 1 | true 1)

  double determinant() const { return p00 * p11 - p01 * p10; }
};

class MitigationSingularError : public std::runtime_error {
 public:
  MitigationSingularError(int qubit, double flip_sum);

  // Zero-based index of the offending qubit.
  int qubit() const { return qubit_; }

 private:
  int qubit_;
};

// Builds the readout channel matrix; e0 and e1 must be probabilities.
ConfusionMatrix confusion_matrix(double e0, double e1);

// True when the channel can be inverted with acceptable conditioning:
// |det| = |1 - e0 - e1| above the tolerance.
bool is_invertible(const ConfusionMatrix& m, double tolerance = 1e-6);

// Applies the inverse of the tensor product of all per-qubit confusion
// matrices to the observed distribution, one qubit-wise contraction at a
// time (cost O(n 2^n) instead of a dense 2^n x 2^n solve). The raw result
// preserves total mass; negative entries — an expected artifact of inverting
// sampled data — are clipped to zero and the vector renormalized. Throws
// MitigationSingularError when any per-qubit channel is singular within
// tolerance 1e-6. Only the e0/e1 fields of the estimates are used.
OutcomeDistribution invert_readout(const OutcomeDistribution& dist,
                                   const std::vector<ErrorParams>& estimates);

// Commanded angle offsets for the next execution: qubit j's offset equals
// the estimated rotation error e2_j, which execute() subtracts from the
// effective angle.
std::vector<double> compensation_offsets(const MapEstimate& estimate);

}  // namespace stabilizer

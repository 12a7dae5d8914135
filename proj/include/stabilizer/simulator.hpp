#pragma once

#include <cstddef>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "stabilizer/noise.hpp"

namespace stabilizer {

// Measured bitstring tallies for one execution of `total` shots. Keys are
// n-character strings of '0'/'1' with qubit j at character position j
// (little-endian), and key counts sum to `total`.
struct ShotCounts {
  int n = 0;
  long total = 0;
  std::map<std::string, long> counts;
};

// Probability vector over all 2^n outcomes, indexed little-endian: outcome
// index = sum over j of bit_j * 2^j. Raw distributions are nonnegative and
// sum to 1 within 1e-9; mitigated ones satisfy that after clipping.
struct OutcomeDistribution {
  int n = 0;
  std::vector<double> probs;
};

// Index of an outcome string under the little-endian convention, and its
// inverse. Keys must contain only '0'/'1'.
std::size_t outcome_index(const std::string& key);
std::string outcome_key(std::size_t index, int n);

// Probability that one qubit reads out 0 under the error triple e. An offset
// e2 on the mixing rotation leaves the qubit with zero-state population
// (1 + sin 2e2)/2; the readout channel then reports 0 with probability 1-e0
// from the zero state and e1 from the one state. The expression is bounded
// inside [min(e1, 1-e0), max(e1, 1-e0)] for any real angle; the clamp only
// shaves floating-point round-off.
double p_zero(const ErrorParams& e);

// Uniform distribution over all 2^n outcomes, 1 <= n <= 12.
OutcomeDistribution ideal_distribution(int n);

// Samples `shots` register readouts. Qubit j is an independent Bernoulli
// draw with zero-probability p_zero({e0_j, e1_j, e2_j - c_j}), where c_j is
// the commanded compensation offset. Uniform variates are consumed in
// (shot-major, qubit-minor) order, one per qubit per shot.
ShotCounts execute(const std::vector<ErrorParams>& noise,
                   const std::vector<double>& compensation, long shots,
                   std::mt19937_64& engine);

// Empirical distribution count/total over all 2^n outcomes; unobserved
// outcomes get probability 0.
OutcomeDistribution counts_to_distribution(const ShotCounts& counts);

}  // namespace stabilizer

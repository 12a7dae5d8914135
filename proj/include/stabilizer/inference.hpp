#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "stabilizer/noise.hpp"
#include "stabilizer/simulator.hpp"

namespace stabilizer {

enum class PriorMode { Uniform, Configured, Sequential };

// Factorized prior: one BetaSpec per qubit per parameter. The estimation
// support is the open unit cube per qubit, matching the beta support; e2 is
// measured in radians inside (0, 1).
struct PriorSpec {
  PriorMode mode = PriorMode::Uniform;
  int n = 0;
  std::vector<std::array<BetaSpec, 3>> shapes;  // [qubit][parameter]

  static PriorSpec uniform(int n);
};

// True when all three shape pairs for the qubit are (1, 1), i.e. the prior
// carries no information for that qubit.
bool is_uniform_prior(const PriorSpec& prior, int qubit);

// Random-walk history for one qubit: every visited state (the initial state
// plus one entry per proposal step) with its unnormalized log-posterior.
// burn_in is the index of the first sample treated as post-burn-in.
struct Chain {
  std::vector<ErrorParams> samples;
  std::vector<double> log_post;
  long accepted = 0;
  std::size_t burn_in = 0;
};

// Per-qubit maximum-a-posteriori estimate with sampler diagnostics.
struct MapEstimate {
  std::vector<ErrorParams> params;
  std::vector<double> acceptance_rate;
  std::vector<double> best_log_post;
};

// Sampler settings shared by all qubits of a register inference.
struct ChainConfig {
  long steps = 10000;
  double burn_in_fraction = 0.2;
  std::array<double, 3> proposal_scales{0.02, 0.02, 0.01};
};

// Number of shots whose bit at the qubit's string position reads 0 — the
// sufficient statistic of the whole likelihood for that qubit.
long zero_count(const ShotCounts& counts, int qubit);

// Factorized log beta prior density at e. Returns -infinity (a plain double
// sentinel, no exception) outside the open unit cube support.
double log_prior(const ErrorParams& e, const std::array<BetaSpec, 3>& prior);

// Binomial log-likelihood of observing z zeros in `shots` shots under the
// zero-probability p_zero(e). Degenerate probabilities that contradict the
// data yield the -infinity sentinel.
double log_likelihood(long z, long shots, const ErrorParams& e);

// Unnormalized log-posterior: log_prior + log_likelihood, with the
// -infinity sentinel absorbing.
double log_posterior(long z, long shots, const ErrorParams& e,
                     const std::array<BetaSpec, 3>& prior);

// Metropolis-Hastings random walk targeting exp(log_posterior). Proposals
// are component-wise Gaussian steps reflected at the support boundaries
// (reflection keeps the proposal symmetric, so the plain Metropolis ratio
// applies). Records every visited state; deterministic for a fixed engine
// state. Requires steps >= 100, positive proposal scales, and an initial
// point inside the support.
Chain metropolis_hastings(long z, long shots, const std::array<BetaSpec, 3>& prior,
                          long steps, const std::array<double, 3>& proposal_scales,
                          const ErrorParams& init, std::mt19937_64& engine,
                          double burn_in_fraction = 0.2);

// MAP extraction result for one qubit.
struct QubitEstimate {
  ErrorParams params;
  double log_post = 0.0;
  double acceptance_rate = 0.0;
};

// Selects the post-burn-in sample with the highest recorded log-posterior,
// then improves it without ever decreasing the log-posterior: an analytic
// candidate jump where one is available (see implementation) followed by
// derivative-free coordinate ascent (3-point bracketing, at most 50 sweeps,
// step tolerance 1e-6).
QubitEstimate map_estimate(const Chain& chain, long z, long shots,
                           const std::array<BetaSpec, 3>& prior);

// Full-register inference result: the assembled MAP estimate plus the raw
// per-qubit chains (needed for sequential prior updates).
struct RegisterInference {
  MapEstimate map;
  std::vector<Chain> chains;
};

// Runs one independent 3-parameter chain per qubit — the posterior
// factorizes across qubits, so this is exactly equivalent to a joint chain.
// qubit_seeds supplies one engine seed per qubit, keeping the per-qubit
// streams isolated and relabeling-invariant.
RegisterInference infer_register(const ShotCounts& counts, const PriorSpec& prior,
                                 const ChainConfig& config,
                                 const std::vector<std::uint64_t>& qubit_seeds);

// Moment-matched beta priors from the post-burn-in chain samples, parameter
// by parameter; parameters whose samples are degenerate fall back to the
// uniform (1, 1) shape.
PriorSpec sequential_prior_update(const std::vector<Chain>& chains);

}  // namespace stabilizer

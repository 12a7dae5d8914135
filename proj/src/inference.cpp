#include "stabilizer/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "stabilizer/rng.hpp"

namespace stabilizer {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Strictly-interior placement for estimates that want to hug a support
// boundary: close enough to the boundary that the remaining density gap is
// far below shot-noise resolution, while keeping every logarithm finite.
constexpr double kSupportEdge = 1e-9;

bool inside_support(const ErrorParams& e) {
  return e.e0 > 0.0 && e.e0 < 1.0 && e.e1 > 0.0 && e.e1 < 1.0 && e.e2 > 0.0 &&
         e.e2 < 1.0;
}

double component(const ErrorParams& e, int k) {
  return k == 0 ? e.e0 : k == 1 ? e.e1 : e.e2;
}

void set_component(ErrorParams& e, int k, double v) {
  (k == 0 ? e.e0 : k == 1 ? e.e1 : e.e2) = v;
}

// Folds a proposal back into [0, 1] by reflecting at the boundaries. Each
// fold strictly shrinks the excursion, so the loop terminates for any finite
// input.
double reflect_unit(double x) {
  while (x < 0.0 || x > 1.0) {
    if (x < 0.0) x = -x;
    if (x > 1.0) x = 2.0 - x;
  }
  return x;
}

double log_beta_function(double alpha, double beta) {
  return std::lgamma(alpha) + std::lgamma(beta) - std::lgamma(alpha + beta);
}

bool is_uniform_triple(const std::array<BetaSpec, 3>& prior) {
  for (const BetaSpec& s : prior) {
    if (s.alpha != 1.0 || s.beta != 1.0) return false;
  }
  return true;
}

// Among all parameter triples whose predicted zero-probability equals the
// observed zero fraction, returns the one with (numerically) zero rotation
// offset and a single nonzero flip probability. Any such triple attains the
// likelihood maximum, but this representative also maximizes |1 - e0 - e1|,
// i.e. the conditioning of the downstream readout inversion, and commands no
// angle correction that the data cannot justify.
ErrorParams consistent_representative(long z, long shots) {
  double pi_hat = static_cast<double>(z) / static_cast<double>(shots);
  pi_hat = std::clamp(pi_hat, kSupportEdge, 1.0 - kSupportEdge);
  ErrorParams e{kSupportEdge, kSupportEdge, kSupportEdge};
  if (pi_hat <= 0.5) {
    e.e0 = std::clamp(1.0 - 2.0 * pi_hat, kSupportEdge, 1.0 - kSupportEdge);
  } else {
    e.e1 = std::clamp(2.0 * pi_hat - 1.0, kSupportEdge, 1.0 - kSupportEdge);
  }
  return e;
}

}  // namespace

PriorSpec PriorSpec::uniform(int n) {
  PriorSpec prior;
  prior.mode = PriorMode::Uniform;
  prior.n = n;
  prior.shapes.assign(static_cast<std::size_t>(n),
                      {BetaSpec{1.0, 1.0}, BetaSpec{1.0, 1.0}, BetaSpec{1.0, 1.0}});
  return prior;
}

bool is_uniform_prior(const PriorSpec& prior, int qubit) {
  return is_uniform_triple(prior.shapes.at(static_cast<std::size_t>(qubit)));
}

long zero_count(const ShotCounts& counts, int qubit) {
  if (qubit < 0 || qubit >= counts.n) {
    throw std::out_of_range("qubit index " + std::to_string(qubit) +
                            " out of range for a " + std::to_string(counts.n) +
                            "-qubit register");
  }
  long zeros = 0;
  for (const auto& [key, count] : counts.counts) {
    if (key[static_cast<std::size_t>(qubit)] == '0') {
      zeros += count;
    }
  }
  return zeros;
}

double log_prior(const ErrorParams& e, const std::array<BetaSpec, 3>& prior) {
  if (!inside_support(e)) {
    return kNegInf;
  }
  double lp = 0.0;
  for (int k = 0; k < 3; ++k) {
    const BetaSpec& s = prior[static_cast<std::size_t>(k)];
    if (s.alpha == 1.0 && s.beta == 1.0) {
      continue;  // uniform component contributes log 1 = 0 exactly
    }
    const double x = component(e, k);
    lp += (s.alpha - 1.0) * std::log(x) + (s.beta - 1.0) * std::log1p(-x) -
          log_beta_function(s.alpha, s.beta);
  }
  return lp;
}

double log_likelihood(long z, long shots, const ErrorParams& e) {
  if (z < 0 || shots < 0 || z > shots) {
    throw std::invalid_argument("zero count must lie in [0, shots]");
  }
  if (shots == 0) {
    return 0.0;
  }
  const double pi = p_zero(e);
  if (pi <= 0.0) {
    return z > 0 ? kNegInf : 0.0;
  }
  if (pi >= 1.0) {
    return z < shots ? kNegInf : 0.0;
  }
  return static_cast<double>(z) * std::log(pi) +
         static_cast<double>(shots - z) * std::log1p(-pi);
}

double log_posterior(long z, long shots, const ErrorParams& e,
                     const std::array<BetaSpec, 3>& prior) {
  const double lp = log_prior(e, prior);
  if (lp == kNegInf) {
    return kNegInf;
  }
  return lp + log_likelihood(z, shots, e);
}

Chain metropolis_hastings(long z, long shots, const std::array<BetaSpec, 3>& prior,
                          long steps, const std::array<double, 3>& proposal_scales,
                          const ErrorParams& init, std::mt19937_64& engine,
                          double burn_in_fraction) {
  if (steps < 100) {
    throw std::invalid_argument("chain length must be at least 100 steps");
  }
  for (double s : proposal_scales) {
    if (!(s > 0.0)) {
      throw std::invalid_argument("proposal scales must be positive");
    }
  }
  if (!inside_support(init)) {
    throw std::invalid_argument("chain initial point lies outside the support");
  }
  if (!(burn_in_fraction >= 0.0 && burn_in_fraction < 1.0)) {
    throw std::invalid_argument("burn-in fraction must lie in [0, 1)");
  }

  Chain chain;
  chain.samples.reserve(static_cast<std::size_t>(steps) + 1);
  chain.log_post.reserve(static_cast<std::size_t>(steps) + 1);

  std::normal_distribution<double> gauss(0.0, 1.0);
  ErrorParams state = init;
  double state_lp = log_posterior(z, shots, state, prior);
  chain.samples.push_back(state);
  chain.log_post.push_back(state_lp);

  for (long step = 0; step < steps; ++step) {
    ErrorParams proposal = state;
    for (int k = 0; k < 3; ++k) {
      const double moved =
          component(state, k) + proposal_scales[static_cast<std::size_t>(k)] * gauss(engine);
      set_component(proposal, k, reflect_unit(moved));
    }
    const double proposal_lp = log_posterior(z, shots, proposal, prior);
    // Accept with probability min(1, exp(proposal_lp - state_lp)); the log of
    // a canonical uniform is always < 0, so a non-decreasing move always
    // passes, and a -infinity proposal never does.
    const double log_u = std::log(canonical_uniform(engine));
    if (log_u < proposal_lp - state_lp) {
      state = proposal;
      state_lp = proposal_lp;
      ++chain.accepted;
    }
    chain.samples.push_back(state);
    chain.log_post.push_back(state_lp);
  }

  chain.burn_in = static_cast<std::size_t>(
      burn_in_fraction * static_cast<double>(chain.samples.size()));
  return chain;
}

QubitEstimate map_estimate(const Chain& chain, long z, long shots,
                           const std::array<BetaSpec, 3>& prior) {
  if (chain.samples.size() != chain.log_post.size()) {
    throw std::invalid_argument("chain samples and log-posterior lists differ in length");
  }
  if (chain.burn_in >= chain.samples.size()) {
    throw std::invalid_argument("chain has no post-burn-in samples");
  }

  // Argmax over the recorded post-burn-in log-posterior values.
  std::size_t best_index = chain.burn_in;
  for (std::size_t i = chain.burn_in + 1; i < chain.samples.size(); ++i) {
    if (chain.log_post[i] > chain.log_post[best_index]) {
      best_index = i;
    }
  }
  ErrorParams best = chain.samples[best_index];
  double best_lp = log_posterior(z, shots, best, prior);

  // With an uninformative prior the posterior is constant along the manifold
  // of triples sharing one predicted zero-probability, so the chain argmax
  // lands on an arbitrary member of that set. Jump to the analytically
  // consistent representative whenever it does not lower the log-posterior
  // (it attains the likelihood maximum, so in practice it never does).
  if (shots > 0 && is_uniform_triple(prior)) {
    const ErrorParams candidate = consistent_representative(z, shots);
    const double candidate_lp = log_posterior(z, shots, candidate, prior);
    if (candidate_lp >= best_lp) {
      best = candidate;
      best_lp = candidate_lp;
    }
  }

  // Derivative-free coordinate ascent: per coordinate, compare the two
  // 3-point bracket neighbors and move only on strict improvement, halving
  // the bracket when the center wins. Monotone in the log-posterior by
  // construction.
  std::array<double, 3> bracket{0.05, 0.05, 0.05};
  constexpr double kTolerance = 1e-6;
  constexpr int kMaxSweeps = 50;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool converged = true;
    for (int k = 0; k < 3; ++k) {
      double& h = bracket[static_cast<std::size_t>(k)];
      if (h < kTolerance) {
        continue;
      }
      converged = false;
      ErrorParams left = best;
      ErrorParams right = best;
      set_component(left, k,
                    std::clamp(component(best, k) - h, kSupportEdge, 1.0 - kSupportEdge));
      set_component(right, k,
                    std::clamp(component(best, k) + h, kSupportEdge, 1.0 - kSupportEdge));
      const double left_lp = log_posterior(z, shots, left, prior);
      const double right_lp = log_posterior(z, shots, right, prior);
      if (left_lp > best_lp && left_lp >= right_lp) {
        best = left;
        best_lp = left_lp;
      } else if (right_lp > best_lp) {
        best = right;
        best_lp = right_lp;
      } else {
        h *= 0.5;
      }
    }
    if (converged) {
      break;
    }
  }

  QubitEstimate estimate;
  estimate.params = best;
  estimate.log_post = best_lp;
  estimate.acceptance_rate =
      chain.samples.size() > 1
          ? static_cast<double>(chain.accepted) /
                static_cast<double>(chain.samples.size() - 1)
          : 0.0;
  return estimate;
}

RegisterInference infer_register(const ShotCounts& counts, const PriorSpec& prior,
                                 const ChainConfig& config,
                                 const std::vector<std::uint64_t>& qubit_seeds) {
  if (counts.n < 1) {
    throw std::invalid_argument("counts must describe at least one qubit");
  }
  if (prior.n != counts.n ||
      prior.shapes.size() != static_cast<std::size_t>(counts.n)) {
    throw std::invalid_argument("prior does not match the register size");
  }
  if (qubit_seeds.size() != static_cast<std::size_t>(counts.n)) {
    throw std::invalid_argument("expected one chain seed per qubit");
  }

  RegisterInference result;
  result.map.params.reserve(qubit_seeds.size());
  result.chains.reserve(qubit_seeds.size());
  for (int q = 0; q < counts.n; ++q) {
    const auto& triple = prior.shapes[static_cast<std::size_t>(q)];
    const long z = zero_count(counts, q);
    // Start each walk at the prior mean, which is always interior.
    ErrorParams init{triple[0].mean(), triple[1].mean(), triple[2].mean()};
    std::mt19937_64 engine = make_engine(qubit_seeds[static_cast<std::size_t>(q)]);
    Chain chain = metropolis_hastings(z, counts.total, triple, config.steps,
                                      config.proposal_scales, init, engine,
                                      config.burn_in_fraction);
    const QubitEstimate estimate = map_estimate(chain, z, counts.total, triple);
    result.map.params.push_back(estimate.params);
    result.map.acceptance_rate.push_back(estimate.acceptance_rate);
    result.map.best_log_post.push_back(estimate.log_post);
    result.chains.push_back(std::move(chain));
  }
  return result;
}

PriorSpec sequential_prior_update(const std::vector<Chain>& chains) {
  if (chains.empty()) {
    throw std::invalid_argument("sequential update requires at least one chain");
  }
  PriorSpec prior;
  prior.mode = PriorMode::Sequential;
  prior.n = static_cast<int>(chains.size());
  prior.shapes.reserve(chains.size());
  for (const Chain& chain : chains) {
    if (chain.burn_in >= chain.samples.size()) {
      throw std::invalid_argument("chain has no post-burn-in samples");
    }
    std::array<BetaSpec, 3> triple;
    for (int k = 0; k < 3; ++k) {
      std::vector<double> values;
      values.reserve(chain.samples.size() - chain.burn_in);
      for (std::size_t i = chain.burn_in; i < chain.samples.size(); ++i) {
        values.push_back(component(chain.samples[i], k));
      }
      try {
        triple[static_cast<std::size_t>(k)] = fit_beta_moments(values);
      } catch (const FitError&) {
        // Degenerate marginal (e.g. a frozen coordinate): carry no
        // information forward for this parameter.
        triple[static_cast<std::size_t>(k)] = BetaSpec{1.0, 1.0};
      }
    }
    prior.shapes.push_back(triple);
  }
  return prior;
}

}  // namespace stabilizer

#include "stabilizer/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stabilizer/rng.hpp"

namespace stabilizer {

std::size_t outcome_index(const std::string& key) {
  if (key.empty()) {
    throw std::invalid_argument("outcome key must not be empty");
  }
  std::size_t index = 0;
  for (std::size_t j = 0; j < key.size(); ++j) {
    const char c = key[j];
    if (c != '0' && c != '1') {
      throw std::invalid_argument("outcome key must contain only '0'/'1': " + key);
    }
    if (c == '1') {
      index |= std::size_t{1} << j;
    }
  }
  return index;
}

std::string outcome_key(std::size_t index, int n) {
  std::string key(static_cast<std::size_t>(n), '0');
  for (int j = 0; j < n; ++j) {
    if (index & (std::size_t{1} << j)) {
      key[static_cast<std::size_t>(j)] = '1';
    }
  }
  return key;
}

double p_zero(const ErrorParams& e) {
  const double symmetric = 0.5 * (1.0 + e.e1 - e.e0);
  const double tilt = 0.5 * (e.e0 + e.e1 - 1.0) * std::sin(2.0 * e.e2);
  return std::clamp(symmetric - tilt, 0.0, 1.0);
}

OutcomeDistribution ideal_distribution(int n) {
  if (n < 1 || n > 12) {
    throw std::out_of_range("register size must lie in [1, 12], got " + std::to_string(n));
  }
  const std::size_t size = std::size_t{1} << n;
  return OutcomeDistribution{n, std::vector<double>(size, 1.0 / static_cast<double>(size))};
}

ShotCounts execute(const std::vector<ErrorParams>& noise,
                   const std::vector<double>& compensation, long shots,
                   std::mt19937_64& engine) {
  if (noise.empty()) {
    throw std::invalid_argument("execute requires at least one qubit");
  }
  if (noise.size() != compensation.size()) {
    throw std::invalid_argument("noise and compensation lists must have equal length");
  }
  if (shots < 1) {
    throw std::invalid_argument("shot count must be at least 1");
  }
  const int n = static_cast<int>(noise.size());
  std::vector<double> zero_prob(noise.size());
  for (std::size_t j = 0; j < noise.size(); ++j) {
    ErrorParams effective = noise[j];
    effective.e2 -= compensation[j];
    zero_prob[j] = p_zero(effective);
  }

  ShotCounts out{n, shots, {}};
  std::string key(noise.size(), '0');
  for (long shot = 0; shot < shots; ++shot) {
    for (std::size_t j = 0; j < noise.size(); ++j) {
      key[j] = canonical_uniform(engine) < zero_prob[j] ? '0' : '1';
    }
    ++out.counts[key];
  }
  return out;
}

OutcomeDistribution counts_to_distribution(const ShotCounts& counts) {
  if (counts.total < 1 || counts.counts.empty()) {
    throw std::invalid_argument("cannot form a distribution from empty counts");
  }
  if (counts.n < 1 || counts.n > 12) {
    throw std::out_of_range("register size must lie in [1, 12], got " +
                            std::to_string(counts.n));
  }
  long tallied = 0;
  std::vector<double> probs(std::size_t{1} << counts.n, 0.0);
  for (const auto& [key, count] : counts.counts) {
    if (static_cast<int>(key.size()) != counts.n) {
      throw std::invalid_argument("outcome key '" + key + "' does not have " +
                                  std::to_string(counts.n) + " bits");
    }
    if (count < 0) {
      throw std::invalid_argument("outcome counts must be nonnegative");
    }
    probs[outcome_index(key)] +=
        static_cast<double>(count) / static_cast<double>(counts.total);
    tallied += count;
  }
  if (tallied != counts.total) {
    throw std::invalid_argument("outcome counts do not sum to the declared total");
  }
  return OutcomeDistribution{counts.n, std::move(probs)};
}

}  // namespace stabilizer

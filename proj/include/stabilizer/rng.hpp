#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace stabilizer {

// splitmix64 finalizer: a bijective 64-bit mix with full avalanche, used to
// turn structured seed paths into decorrelated stream seeds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Derives the seed for one logical random stream from a root seed and a
// structured path such as {phase, arm, run, qubit}. Seeds depend only on the
// path, never on how many draws any other stream consumed, so adding runs or
// arms to an experiment cannot perturb earlier results.
inline std::uint64_t derive_seed(std::uint64_t root,
                                 std::initializer_list<std::uint64_t> path) noexcept {
  std::uint64_t s = mix64(root);
  for (std::uint64_t part : path) {
    s = mix64(s ^ mix64(part));
  }
  return s;
}

inline std::mt19937_64 make_engine(std::uint64_t seed) {
  return std::mt19937_64(seed);
}

// Canonical 53-bit uniform in [0, 1); consumes exactly one engine call, so
// draw schedules stay aligned across platforms.
inline double canonical_uniform(std::mt19937_64& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

}  // namespace stabilizer

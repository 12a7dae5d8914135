#include <cstdint>
#include <set>
#include <vector>

#include "doctest.h"
#include "stabilizer/rng.hpp"

using namespace stabilizer;

TEST_CASE("mix64 is deterministic and changes on any input change") {
  CHECK(mix64(0) == mix64(0));
  CHECK(mix64(0) != mix64(1));
  CHECK(mix64(42) != mix64(43));
  // Single-bit flips in the input should flip roughly half the output bits.
  const std::uint64_t base = mix64(0x12345678u);
  for (int bit = 0; bit < 64; ++bit) {
    const std::uint64_t flipped = mix64(0x12345678u ^ (1ull << bit));
    const int popcount = __builtin_popcountll(base ^ flipped);
    CHECK(popcount >= 10);
    CHECK(popcount <= 54);
  }
}

TEST_CASE("derive_seed separates paths and path lengths") {
  const std::uint64_t root = 7;
  CHECK(derive_seed(root, {1, 2}) == derive_seed(root, {1, 2}));
  CHECK(derive_seed(root, {1, 2}) != derive_seed(root, {2, 1}));
  CHECK(derive_seed(root, {1}) != derive_seed(root, {1, 0}));
  CHECK(derive_seed(root, {}) != derive_seed(root, {0}));
  CHECK(derive_seed(1, {1, 2}) != derive_seed(2, {1, 2}));

  // No collisions across a grid of realistic paths.
  std::set<std::uint64_t> seen;
  for (std::uint64_t phase = 0; phase < 5; ++phase) {
    for (std::uint64_t arm = 0; arm < 3; ++arm) {
      for (std::uint64_t run = 0; run < 50; ++run) {
        seen.insert(derive_seed(root, {phase, arm, run}));
      }
    }
  }
  CHECK(seen.size() == 5u * 3u * 50u);
}

TEST_CASE("canonical_uniform lies in [0,1) and consumes one engine call") {
  auto engine = make_engine(123);
  auto twin = make_engine(123);
  for (int i = 0; i < 1000; ++i) {
    const double u = canonical_uniform(engine);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const std::uint64_t raw = twin();
    CHECK(u == static_cast<double>(raw >> 11) * 0x1.0p-53);
  }
}

TEST_CASE("engines with derived seeds produce decorrelated streams") {
  auto a = make_engine(derive_seed(1, {0}));
  auto b = make_engine(derive_seed(1, {1}));
  int equal = 0;
  for (int i = 0; i < 1000; ++i) {
    if ((a() & 1) == (b() & 1)) ++equal;
  }
  // Matching low bits should behave like independent coin flips.
  CHECK(equal > 400);
  CHECK(equal < 600);
}

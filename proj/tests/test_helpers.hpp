#pragma once
// Shared generators for the test suites.

#include <random>

#include "mtdirac/verify.hpp"

namespace mtdirac::testing {

// Dyadic lattice value in [-range, range]: sums and differences of such
// values stay exact in double precision, which the bitwise-equality tests
// rely on.
inline double dyadic(std::mt19937_64& rng, double range) {
  const long long steps = static_cast<long long>(range * 1024.0);
  std::uniform_int_distribution<long long> dist(-steps, steps);
  return static_cast<double>(dist(rng)) / 1024.0;
}

inline SpinIndex random_spin(int n, std::mt19937_64& rng) {
  return spin_of_index(1 + static_cast<int>(rng() % (1ull << n)), n);
}

}  // namespace mtdirac::testing

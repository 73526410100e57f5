#pragma once
// Component indexing, domain-membership classification and characteristic
// values.

#include "mtdirac/types.hpp"

namespace mtdirac {

// Linear component index in 1..2^N. Binary order with '-' -> 0, '+' -> 1 and
// the last particle least significant: (-,...,-) -> 1, (-,...,-,+) -> 2,
// (+,...,+) -> 2^N.
int component_index(const SpinIndex& s);

// Inverse of component_index.
SpinIndex spin_of_index(int index, int n);

// Sign of particle k in the 0-based linear component index (index0 in
// [0, 2^N)). Hot-path variant of spin_of_index.
inline int sign_of_component(int index0, int n, int k) {
  return ((index0 >> (n - 1 - k)) & 1) ? +1 : -1;
}

// Deterministic domain classification with absolute tolerance tol on
// (dt)^2 - (dz)^2 for the light-cone test and on coordinate differences for
// the coincidence test.
Classification classify(const Configuration& cfg, double tol = kDefaultClassifyTol);

CharacteristicValues characteristic_values(const Configuration& cfg, const SpinIndex& s);

}  // namespace mtdirac

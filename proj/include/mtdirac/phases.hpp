#pragma once
// Collision counting on permutations and the boundary-phase ledger attached
// to the sorting permutation of the characteristic values.

#include <vector>

#include "mtdirac/types.hpp"

namespace mtdirac {

// Bijection on {0,...,n-1}, stored as the image sequence.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images);
  static Permutation identity(int n);

  int n() const { return static_cast<int>(images_.size()); }
  int operator()(int j) const { return images_[static_cast<size_t>(j)]; }
  const std::vector<int>& images() const { return images_; }
  Permutation inverse() const;
  bool is_identity() const;
  // (-1)^(number of inversions).
  int parity_sign() const;

  bool operator==(const Permutation&) const = default;

 private:
  std::vector<int> images_;
};

// Number of inversions #{(k,l) : k<l and pi(k)>pi(l)}. Each inversion is a
// light-cone crossing of two particles' characteristic lines.
int collisions(const Permutation& pi);

// Permutation pi with c[pi(0)] <= ... <= c[pi(n-1)]. Stable: tied values keep
// their original order, which is the unique minimal-collision choice.
Permutation sort_permutation(const CharacteristicValues& c);

struct PhaseResult {
  // Reduced to (-pi, pi].
  double phase = 0.0;
  // Exact integer multiples: phase = sum_k coefficients[k] * phi^(k).
  std::vector<long long> coefficients;
  Permutation permutation;

  double unreduced(const ModelParams& params) const;
};

// Phase accumulated by decomposing pi into adjacent transpositions, each
// removing exactly one collision, left to right. Every collision-reducing
// order yields the same result on admissible (spin, configuration) pairs;
// the left-to-right order makes the function total and deterministic.
PhaseResult phase(const SpinIndex& s, const Permutation& pi, const ModelParams& params);

}  // namespace mtdirac

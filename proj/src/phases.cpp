#include "mtdirac/phases.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mtdirac {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  const int n = static_cast<int>(images_.size());
  std::vector<char> seen(static_cast<size_t>(n), 0);
  for (int v : images_) {
    if (v < 0 || v >= n || seen[static_cast<size_t>(v)])
      throw std::invalid_argument("Permutation: images must be a bijection on {0..n-1}");
    seen[static_cast<size_t>(v)] = 1;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> im(static_cast<size_t>(n));
  std::iota(im.begin(), im.end(), 0);
  return Permutation(std::move(im));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (int j = 0; j < n(); ++j) inv[static_cast<size_t>(images_[static_cast<size_t>(j)])] = j;
  return Permutation(std::move(inv));
}

bool Permutation::is_identity() const {
  for (int j = 0; j < n(); ++j)
    if (images_[static_cast<size_t>(j)] != j) return false;
  return true;
}

int Permutation::parity_sign() const { return collisions(*this) % 2 == 0 ? +1 : -1; }

int collisions(const Permutation& pi) {
  int count = 0;
  for (int k = 0; k < pi.n(); ++k)
    for (int l = k + 1; l < pi.n(); ++l)
      if (pi(k) > pi(l)) ++count;
  return count;
}

Permutation sort_permutation(const CharacteristicValues& c) {
  std::vector<int> idx(static_cast<size_t>(c.n()));
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&c](int a, int b) { return c[a] < c[b]; });
  return Permutation(std::move(idx));
}

double PhaseResult::unreduced(const ModelParams& params) const {
  double phi = 0.0;
  for (size_t k = 0; k < coefficients.size(); ++k)
    phi += static_cast<double>(coefficients[k]) * params.phase(static_cast<int>(k));
  return phi;
}

PhaseResult phase(const SpinIndex& s, const Permutation& pi, const ModelParams& params) {
  const int n = pi.n();
  if (s.n() != n || params.n() != n)
    throw std::invalid_argument("phase: mismatched sizes");

  // pos[v] = position of value v in the image sequence. The adjacent
  // transposition of values v,v+1 removes exactly one collision iff v+1
  // currently precedes v; each removal contributes the sign at slot v of the
  // current spin tuple times phi^(v), and swaps the spin slots v,v+1.
  std::vector<int> pos(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) pos[static_cast<size_t>(pi(j))] = j;
  std::vector<int> spins = s.signs();
  std::vector<long long> coeff(static_cast<size_t>(n - 1), 0);

  for (;;) {
    int v = -1;
    for (int k = 0; k + 1 < n; ++k) {
      if (pos[static_cast<size_t>(k + 1)] < pos[static_cast<size_t>(k)]) {
        v = k;
        break;
      }
    }
    if (v < 0) break;
    coeff[static_cast<size_t>(v)] += spins[static_cast<size_t>(v)];
    std::swap(spins[static_cast<size_t>(v)], spins[static_cast<size_t>(v) + 1]);
    std::swap(pos[static_cast<size_t>(v)], pos[static_cast<size_t>(v) + 1]);
  }

  PhaseResult out;
  out.coefficients = std::move(coeff);
  out.permutation = pi;
  out.phase = reduce_angle(out.unreduced(params));
  return out;
}

}  // namespace mtdirac

#pragma once
// Boosts in the z-direction, parametrized by rapidity, acting on events,
// configurations, spinor components and hypersurfaces.

#include "mtdirac/geometry_current.hpp"
#include "mtdirac/solver.hpp"

namespace mtdirac {

struct Boost {
  double rapidity = 0.0;

  Boost inverse() const { return {-rapidity}; }
  Boost compose(const Boost& other) const { return {rapidity + other.rapidity}; }
};

// (t, z) -> (t cosh b + z sinh b, z cosh b + t sinh b).
Event boost_event(const Boost& b, const Event& e);
Configuration boost_configuration(const Boost& b, const Configuration& cfg);

// Lazy boosted evaluator: psi'_s(x) = prod_k (cosh(b/2) - s_k sinh(b/2)) *
// psi_s(L^{-1} x_1, ..., L^{-1} x_N) for event rapidity b. Exact, no second
// solve; the half-angle spinor factors pair with the event map so that the
// tensor current transforms covariantly.
class BoostedWaveFunction {
 public:
  BoostedWaveFunction(Boost b, WaveFunction psi);

  int n() const { return psi_.n(); }
  int n_components() const { return psi_.n_components(); }
  const WaveFunction& base() const { return psi_; }
  const Boost& boost() const { return boost_; }

  double spin_factor(int index0) const { return factors_[static_cast<size_t>(index0)]; }
  double spin_factor(const SpinIndex& s) const;

  complex evaluate_full(const Configuration& cfg, const SpinIndex& s) const;
  void evaluate_all_full(const Configuration& cfg, std::span<complex> out,
                         double classify_tol = kDefaultClassifyTol) const;

 private:
  Boost boost_;
  WaveFunction psi_;
  std::vector<double> factors_;
};

BoostedWaveFunction boost_wavefunction(const Boost& b, const WaveFunction& psi);
FieldView field_view(const BoostedWaveFunction& psi);

// Image of a space-like graph under a boost, again as a graph; the new
// profile is obtained by inverting the strictly monotone map
// z' = z cosh b + t(z) sinh b numerically.
Hypersurface boost_surface(const Boost& b, const Hypersurface& base, double z_search_halfwidth);

}  // namespace mtdirac

#include "mtdirac/lorentz.hpp"

#include <cmath>

namespace mtdirac {

Event boost_event(const Boost& b, const Event& e) {
  const double ch = std::cosh(b.rapidity);
  const double sh = std::sinh(b.rapidity);
  return Event{e.t * ch + e.z * sh, e.z * ch + e.t * sh};
}

Configuration boost_configuration(const Boost& b, const Configuration& cfg) {
  std::vector<Event> ev(static_cast<size_t>(cfg.n()));
  for (int k = 0; k < cfg.n(); ++k) ev[static_cast<size_t>(k)] = boost_event(b, cfg[k]);
  return Configuration(std::move(ev));
}

BoostedWaveFunction::BoostedWaveFunction(Boost b, WaveFunction psi)
    : boost_(b), psi_(std::move(psi)) {
  const int n = psi_.n();
  const int nc = psi_.n_components();
  // Spinor representation at half the event rapidity: a '-' slot scales by
  // e^{+b/2} and a '+' slot by e^{-b/2}, which is what makes the tensor
  // current transform as a tensor and the surface norm boost invariant.
  const double ch = std::cosh(0.5 * b.rapidity);
  const double sh = std::sinh(0.5 * b.rapidity);
  factors_.resize(static_cast<size_t>(nc));
  for (int i = 0; i < nc; ++i) {
    double f = 1.0;
    for (int k = 0; k < n; ++k) f *= ch - sign_of_component(i, n, k) * sh;
    factors_[static_cast<size_t>(i)] = f;
  }
}

double BoostedWaveFunction::spin_factor(const SpinIndex& s) const {
  return factors_[static_cast<size_t>(component_index(s) - 1)];
}

complex BoostedWaveFunction::evaluate_full(const Configuration& cfg, const SpinIndex& s) const {
  const Configuration pulled = boost_configuration(boost_.inverse(), cfg);
  return spin_factor(s) * psi_.evaluate_full(pulled, s);
}

void BoostedWaveFunction::evaluate_all_full(const Configuration& cfg, std::span<complex> out,
                                            double classify_tol) const {
  const Configuration pulled = boost_configuration(boost_.inverse(), cfg);
  psi_.evaluate_all_full(pulled, out, classify_tol);
  for (int i = 0; i < psi_.n_components(); ++i)
    out[static_cast<size_t>(i)] *= factors_[static_cast<size_t>(i)];
}

BoostedWaveFunction boost_wavefunction(const Boost& b, const WaveFunction& psi) {
  return BoostedWaveFunction(b, psi);
}

FieldView field_view(const BoostedWaveFunction& psi) {
  FieldView f;
  f.n = psi.n();
  // |z| <= R exp(|b|) contains the boosted image of the initial support.
  f.support_radius = psi.base().data().support_radius() * std::exp(std::abs(psi.boost().rapidity));
  f.eval_all = [psi](const Configuration& cfg, std::span<complex> out) {
    psi.evaluate_all_full(cfg, out, 0.0);
  };
  return f;
}

Hypersurface boost_surface(const Boost& b, const Hypersurface& base, double z_search_halfwidth) {
  const double ch = std::cosh(b.rapidity);
  const double sh = std::sinh(b.rapidity);
  const double w = z_search_halfwidth;

  // z' = z cosh + t(z) sinh is strictly increasing (|t'| < 1).
  auto invert = [base, ch, sh, w](double zp) -> double {
    double lo = -w, hi = w;
    auto val = [&](double z) { return z * ch + base.time(z) * sh - zp; };
    double flo = val(lo), fhi = val(hi);
    if (flo > 0.0 || fhi < 0.0)
      throw std::invalid_argument("boost_surface: search interval does not bracket the preimage");
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double fm = val(mid);
      if (fm <= 0.0) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
        fhi = fm;
      }
      if (hi - lo < 1e-15 * (1.0 + std::abs(mid))) break;
    }
    return 0.5 * (lo + hi);
  };

  auto time_fn = [base, invert, ch, sh](double zp) {
    const double z = invert(zp);
    return base.time(z) * ch + z * sh;
  };
  auto slope_fn = [base, invert, ch, sh](double zp) {
    const double z = invert(zp);
    const double u = base.slope(z);
    return (u * ch + sh) / (ch + u * sh);
  };
  const double v = std::abs(std::tanh(b.rapidity));
  const double bbase = base.slope_bound();
  const double bound = (bbase + v) / (1.0 + bbase * v);
  return Hypersurface(std::move(time_fn), std::move(slope_fn), bound,
                      base.description() + " boosted beta=" + std::to_string(b.rapidity));
}

}  // namespace mtdirac

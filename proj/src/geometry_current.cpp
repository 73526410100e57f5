#include "mtdirac/geometry_current.hpp"

#include <array>
#include <bit>
#include <cmath>

namespace mtdirac {

double CurrentTensor::at(std::span<const int> mu) const {
  int mask = 0;
  for (size_t k = 0; k < mu.size(); ++k) {
    if (mu[k] != 0 && mu[k] != 1) throw std::invalid_argument("CurrentTensor: mu indices are 0/1");
    mask = (mask << 1) | mu[k];
  }
  return at_mask(mask);
}

CurrentTensor current(const WaveFunction& psi, const Configuration& cfg) {
  const int n = psi.n();
  const int nc = psi.n_components();
  std::vector<complex> comps(static_cast<size_t>(nc));
  psi.evaluate_all_full(cfg, comps);

  CurrentTensor j;
  j.n = n;
  j.values.assign(static_cast<size_t>(nc), 0.0);
  for (int i = 0; i < nc; ++i) {
    const double w = std::norm(comps[static_cast<size_t>(i)]);
    if (w == 0.0) continue;
    for (int mask = 0; mask < nc; ++mask) {
      // factor prod_{k: mu_k=1} (-s_k): -1 for each masked '+' slot.
      const int neg = std::popcount(static_cast<unsigned>(mask & i));
      j.values[static_cast<size_t>(mask)] += (neg % 2 == 0) ? w : -w;
    }
  }
  return j;
}

Hypersurface::Hypersurface(std::function<double(double)> time_fn,
                           std::function<double(double)> slope_fn, double slope_bound,
                           std::string description)
    : time_(std::move(time_fn)),
      slope_(std::move(slope_fn)),
      slope_bound_(slope_bound),
      description_(std::move(description)) {
  if (!(slope_bound_ < 1.0))
    throw SlopeError("Hypersurface: slope bound must be < 1 (space-like graph)");
}

Hypersurface Hypersurface::flat(double t0) {
  return Hypersurface([t0](double) { return t0; }, [](double) { return 0.0; }, 0.0,
                      "flat t0=" + std::to_string(t0));
}

Hypersurface Hypersurface::tilted(double t0, double rapidity) {
  const double v = std::tanh(rapidity);
  return Hypersurface([t0, v](double z) { return t0 + v * z; }, [v](double) { return v; },
                      std::abs(v), "tilted t0=" + std::to_string(t0) + " beta=" + std::to_string(rapidity));
}

Hypersurface Hypersurface::tanh_profile(double t0, std::vector<TanhTerm> terms) {
  double bound = 0.0;
  for (const TanhTerm& term : terms) bound += std::abs(term.amplitude * term.rate);
  auto time_fn = [t0, terms](double z) {
    double t = t0;
    for (const TanhTerm& term : terms) t += term.amplitude * std::tanh(term.rate * (z - term.center));
    return t;
  };
  auto slope_fn = [terms](double z) {
    double s = 0.0;
    for (const TanhTerm& term : terms) {
      const double c = std::cosh(term.rate * (z - term.center));
      s += term.amplitude * term.rate / (c * c);
    }
    return s;
  };
  return Hypersurface(std::move(time_fn), std::move(slope_fn), bound,
                      "tanh profile (" + std::to_string(terms.size()) + " terms)");
}

double Hypersurface::max_abs_time(double box) const {
  double worst = 0.0;
  const int samples = 1024;
  for (int i = 0; i <= samples; ++i) {
    const double z = -box + 2.0 * box * static_cast<double>(i) / samples;
    worst = std::max(worst, std::abs(time_(z)));
  }
  return worst;
}

FieldView field_view(const WaveFunction& psi) {
  FieldView f;
  f.n = psi.n();
  f.support_radius = psi.data().support_radius();
  // Exact classification: quadrature nodes are strictly ordered, so only
  // exact ties are coincidences and no space-like pair may fall into the
  // light-cone tolerance band.
  f.eval_all = [psi](const Configuration& cfg, std::span<complex> out) {
    psi.evaluate_all_full(cfg, out, 0.0);
  };
  return f;
}

double propagation_box(double support_radius, const Hypersurface& sigma, double pad) {
  double box = support_radius + pad;
  for (int it = 0; it < 3; ++it) box = support_radius + sigma.max_abs_time(box) + pad;
  return box;
}

double surface_integral(const FieldView& field, const Hypersurface& sigma, double box,
                        const QuadratureSpec& quad) {
  const int n = field.n;
  const int nc = 1 << n;
  if (box < field.support_radius)
    throw std::invalid_argument("surface_integral: box smaller than the data support");

  auto integrand = [&field, &sigma, n, nc](std::span<const double> zs) -> double {
    std::array<double, 12> slopes{};
    for (int k = 0; k < n; ++k) {
      const double s = sigma.slope(zs[static_cast<size_t>(k)]);
      if (!(std::abs(s) < 1.0))
        throw SlopeError("surface_integral: |t'(z)| >= 1 at a quadrature node");
      slopes[static_cast<size_t>(k)] = s;
    }
    std::vector<Event> ev(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k)
      ev[static_cast<size_t>(k)] = Event{sigma.time(zs[static_cast<size_t>(k)]), zs[static_cast<size_t>(k)]};
    const Configuration cfg(std::move(ev));

    static thread_local std::vector<complex> buf;
    buf.resize(static_cast<size_t>(nc));
    field.eval_all(cfg, buf);

    double acc = 0.0;
    for (int i = 0; i < nc; ++i) {
      const double w = std::norm(buf[static_cast<size_t>(i)]);
      if (w == 0.0) continue;
      double weight = 1.0;
      for (int k = 0; k < n; ++k) {
        const double sk = ((i >> (n - 1 - k)) & 1) ? +1.0 : -1.0;
        weight *= 1.0 + sk * slopes[static_cast<size_t>(k)];
      }
      acc += w * weight;
    }
    return acc;
  };

  return integrate_ordered_simplex(n, -box, box, quad.cells_per_dim, quad.gl_order, integrand,
                                   quad.parallel);
}

double surface_integral(const WaveFunction& psi, const Hypersurface& sigma, double box,
                        const QuadratureSpec& quad) {
  return surface_integral(field_view(psi), sigma, box, quad);
}

double norm_distance(const FieldView& a, const FieldView& b, const Hypersurface& sigma,
                     double box, const QuadratureSpec& quad) {
  if (a.n != b.n) throw std::invalid_argument("norm_distance: particle count mismatch");
  FieldView diff;
  diff.n = a.n;
  diff.support_radius = std::max(a.support_radius, b.support_radius);
  diff.eval_all = [a, b](const Configuration& cfg, std::span<complex> out) {
    static thread_local std::vector<complex> tmp;
    tmp.resize(out.size());
    a.eval_all(cfg, out);
    b.eval_all(cfg, tmp);
    for (size_t i = 0; i < out.size(); ++i) out[i] -= tmp[i];
  };
  const double sq = surface_integral(diff, sigma, box, quad);
  return std::sqrt(std::max(0.0, sq));
}

double norm_distance(const WaveFunction& a, const WaveFunction& b, const Hypersurface& sigma,
                     double box, const QuadratureSpec& quad) {
  return norm_distance(field_view(a), field_view(b), sigma, box, quad);
}

FluxReport boundary_flux_check(const WaveFunction& psi,
                               const std::vector<Configuration>& stratum_samples) {
  const int n = psi.n();
  const int nc = psi.n_components();
  FluxReport report;
  std::vector<complex> comps(static_cast<size_t>(nc));
  for (const Configuration& cfg : stratum_samples) {
    const Classification cls = classify(cfg);
    if (cls.kind != DomainClass::BoundaryStratum)
      throw std::invalid_argument("boundary_flux_check: sample is not on a coincidence stratum");
    const int k = cls.stratum;
    psi.evaluate_all_full(cfg, comps);
    double flux = 0.0;
    for (int i = 0; i < nc; ++i) {
      const int sk = sign_of_component(i, n, k);
      const int sk1 = sign_of_component(i, n, k + 1);
      if (sk == sk1) continue;
      flux += static_cast<double>(sk1) * std::norm(comps[static_cast<size_t>(i)]);
    }
    report.max_flux_violation = std::max(report.max_flux_violation, std::abs(flux));
    report.max_boundary_residual =
        std::max(report.max_boundary_residual, psi.boundary_violation(cfg));
    ++report.samples;
  }
  return report;
}

}  // namespace mtdirac

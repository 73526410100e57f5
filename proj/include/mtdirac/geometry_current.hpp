#pragma once
// Conserved tensor current, space-like hypersurfaces as graphs t = t(z), the
// pullback of the current form onto product leaves, and the flux balance at
// coincidence strata.

#include <functional>
#include <string>

#include "mtdirac/quadrature.hpp"
#include "mtdirac/solver.hpp"

namespace mtdirac {

// j^{mu_1..mu_N} at a configuration, indexed by the bitmask with bit
// (n-1-k) <-> mu_k = 1 (same bit layout as the component index). In the
// diagonal representation j^{mu(vec)} = sum_s |psi_s|^2 prod_k (-s_k)^{mu_k}.
struct CurrentTensor {
  int n = 0;
  std::vector<double> values;

  double at_mask(int mask) const { return values[static_cast<size_t>(mask)]; }
  double at(std::span<const int> mu) const;
  double density() const { return values[0]; }
};

CurrentTensor current(const WaveFunction& psi, const Configuration& cfg);

struct TanhTerm {
  double amplitude = 0.0;
  double rate = 1.0;
  double center = 0.0;
};

// Smooth space-like graph t = t(z) with |t'(z)| <= slope_bound < 1.
class Hypersurface {
 public:
  Hypersurface(std::function<double(double)> time_fn, std::function<double(double)> slope_fn,
               double slope_bound, std::string description);

  static Hypersurface flat(double t0);
  // t = t0 + z tanh(rapidity): the image of a constant-time slice under a
  // boost.
  static Hypersurface tilted(double t0, double rapidity);
  static Hypersurface tanh_profile(double t0, std::vector<TanhTerm> terms);

  double time(double z) const { return time_(z); }
  double slope(double z) const { return slope_(z); }
  double slope_bound() const { return slope_bound_; }
  const std::string& description() const { return description_; }
  double max_abs_time(double box) const;

 private:
  std::function<double(double)> time_;
  std::function<double(double)> slope_;
  double slope_bound_ = 0.0;
  std::string description_;
};

struct QuadratureSpec {
  int cells_per_dim = 16;
  int gl_order = 10;
  bool parallel = true;
};

// Type-erased component evaluator, so boosted evaluators integrate through
// the same quadrature path.
struct FieldView {
  int n = 0;
  double support_radius = 0.0;
  std::function<void(const Configuration&, std::span<complex>)> eval_all;
};

FieldView field_view(const WaveFunction& psi);

// Leaf truncation radius: supports propagate at unit speed, so the integrand
// vanishes for |z| beyond the initial radius plus the surface's time range.
double propagation_box(double support_radius, const Hypersurface& sigma, double pad = 0.5);

// Integral of the current form over the ordered part of the leaf
// {t_k = t(z_k)}: the scalar integrand is sum_s |psi_s|^2 prod_k
// (1 + s_k t'(z_k)). Positive; equals the initial norm on the t = 0 slice.
double surface_integral(const FieldView& field, const Hypersurface& sigma, double box,
                        const QuadratureSpec& quad = {});
double surface_integral(const WaveFunction& psi, const Hypersurface& sigma, double box,
                        const QuadratureSpec& quad = {});

// Surface norm of the pointwise difference of two evaluators with shared
// parameters; zero iff the restrictions to the leaf agree almost everywhere.
double norm_distance(const FieldView& a, const FieldView& b, const Hypersurface& sigma,
                     double box, const QuadratureSpec& quad = {});
double norm_distance(const WaveFunction& a, const WaveFunction& b, const Hypersurface& sigma,
                     double box, const QuadratureSpec& quad = {});

struct FluxReport {
  // max over samples of |sum_{s: s_k != s_{k+1}} s_{k+1} |psi_s|^2|.
  double max_flux_violation = 0.0;
  // max over samples and mixed pairs of |psi_{..+-..} - e^{i phi} psi_{..-+..}|.
  double max_boundary_residual = 0.0;
  int samples = 0;
};

FluxReport boundary_flux_check(const WaveFunction& psi,
                               const std::vector<Configuration>& stratum_samples);

}  // namespace mtdirac

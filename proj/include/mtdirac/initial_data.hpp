#pragma once
// Initial data on the ordered sector at common time zero: built-in families,
// antisymmetrization, validation against the boundary compatibility
// conditions, and tabulated-grid file I/O.

#include <functional>
#include <memory>
#include <optional>

#include "mtdirac/core_model.hpp"
#include "mtdirac/types.hpp"

namespace mtdirac {

// (1 - x^2)^(order+1) on |x| < 1, zero outside: C^order with exactly compact
// support and no transcendental tails.
double bump(double x, int order);

// One-particle spinor profile: per-sign amplitude times a polynomial bump,
// optionally modulated by a plane wave.
struct Packet {
  double center = 0.0;
  double width = 1.0;
  complex amp_minus = 0.0;
  complex amp_plus = 0.0;
  double wavenumber_minus = 0.0;
  double wavenumber_plus = 0.0;
  int order = 4;

  complex component(int sign, double z) const;
  double support_lo() const { return center - width; }
  double support_hi() const { return center + width; }
};

// Immutable per-component initial data. Components are functions of the
// ordered arguments z_1 <= ... <= z_N; families built from one-particle
// profiles remain well defined off the ordered sector (off_simplex() true),
// which antisymmetrize() requires.
class InitialData {
 public:
  class Impl {
   public:
    Impl(int n, int smoothness, double radius, bool off_simplex)
        : n_(n), smoothness_(smoothness), radius_(radius), off_simplex_(off_simplex) {}
    virtual ~Impl() = default;
    virtual complex eval(int index0, std::span<const double> zs) const = 0;
    int n_;
    int smoothness_;
    double radius_;
    bool off_simplex_;
  };

  using ComponentFn = std::function<complex(std::span<const double>)>;

  InitialData() = default;
  explicit InitialData(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  static InitialData from_callables(int n, int smoothness, double support_radius,
                                    std::vector<ComponentFn> components, bool off_simplex);

  bool valid() const { return impl_ != nullptr; }
  int n() const { return impl_->n_; }
  int smoothness() const { return impl_->smoothness_; }
  double support_radius() const { return impl_->radius_; }
  bool off_simplex() const { return impl_->off_simplex_; }

  complex component(int index0, std::span<const double> zs) const {
    return impl_->eval(index0, zs);
  }
  complex component(const SpinIndex& s, std::span<const double> zs) const {
    return impl_->eval(component_index(s) - 1, zs);
  }

 private:
  std::shared_ptr<const Impl> impl_;
};

// Slater determinant of N one-particle packets. With pairwise disjoint packet
// supports every mixed component vanishes in a tube around each coincidence
// stratum, so the data is compatible with any boundary phases.
InitialData wedge_family(const std::vector<Packet>& packets);

// N=2 family with nonzero values on the coincidence stratum, compatible with
// the model's phase by construction: g_{+-} = F and g_{-+} = e^{-i phi} F
// with swapped arguments, for a fixed smooth two-argument profile F.
// amp_factor != 1 or phase_offset != 0 deliberately breaks the compatibility
// (negative-control datasets).
InitialData reflect_family(const ModelParams& params, double radius,
                           double amp_factor = 1.0, double phase_offset = 0.0);

// Two-packet pure-chirality pair: the right packet carries only the '+'
// component and the left packet only the '-' component, giving the mixed
// components the single-product structure alpha(z1)beta(z2).
struct ProductFamily {
  Packet right;  // pure '+': amp_minus == 0
  Packet left;   // pure '-': amp_plus == 0

  ProductFamily(Packet right_packet, Packet left_packet);

  complex alpha(double z) const { return right.component(+1, z); }
  complex beta(double z) const { return left.component(-1, z); }
  complex gamma(double z) const { return -beta(z); }
  complex delta(double z) const { return alpha(z); }

  // max over sample points of |alpha(z1)beta(z2) + gamma(z2)delta(z1)|.
  double antisymmetry_residual(std::span<const double> zs) const;

  InitialData to_initial_data() const;
};

// Group average over particle relabelings; requires off-simplex data.
// Idempotent; the result extends consistently to all sectors.
InitialData antisymmetrize(const InitialData& raw);

struct GridSpec {
  double z_min = -1.0;
  double z_max = 1.0;
  int nodes = 65;

  static GridSpec covering(const InitialData& data, int nodes, double pad_fraction = 0.1);
  double node(int i) const {
    return z_min + (z_max - z_min) * static_cast<double>(i) / static_cast<double>(nodes - 1);
  }
  double step() const { return (z_max - z_min) / static_cast<double>(nodes - 1); }
};

struct ValidationEntry {
  std::string check;     // "compatibility" | "support" | "transition"
  int stratum = -1;      // 0-based stratum, -1 when not applicable
  int order = 0;         // derivative order for "transition"
  double violation = 0.0;
  double tolerance = 0.0;
  bool pass = true;
  std::string note;
};

struct ValidationReport {
  std::vector<ValidationEntry> entries;

  bool pass() const;
  double max_violation(const std::string& check) const;
  std::string summary() const;
};

// Checks, per stratum: the boundary compatibility of the data, compact
// support inside the declared radius, and matching one-sided transverse
// derivatives up to order m across the stratum. Reports violations, never
// throws on them.
ValidationReport validate(const InitialData& data, const ModelParams& params,
                          const GridSpec& grid, double value_tol = 1e-9,
                          double derivative_tol = 1e-4);

// Tabulated-grid file format. Header "N=<int> m=<int> R=<float> grid=<int>",
// then per-component blocks "component <i>" with rows "z1 .. zN re im" over
// all ordered node tuples. Floats are written with 17 significant digits so
// a save/load round trip reproduces node values exactly.
void save_initial_data(const InitialData& data, const std::string& path, int grid_nodes);
InitialData load_initial_data(const std::string& path);

}  // namespace mtdirac

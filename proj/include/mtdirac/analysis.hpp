#pragma once
// Entanglement and interaction diagnostics: equal-time sections, Schmidt
// rank, the effective contact-interaction jump relation in relative
// coordinates, and the minimal-space-like-distance construction showing the
// over-determination of that domain.

#include "mtdirac/geometry_current.hpp"
#include "mtdirac/solver.hpp"

namespace mtdirac {

// Equal-time section chi(z1, z2) = psi(t, z1, t, z2) for N = 2, sampled on a
// square grid; relative/center coordinates are u = (z1-z2)/2, v = (z1+z2)/2.
struct SingleTimeState {
  double t = 0.0;
  GridSpec grid;
  // chi[(comp * nodes + i) * nodes + j] = psi_comp(t, z_i, t, z_j)
  std::vector<complex> chi;

  complex value(int comp0, int i, int j) const {
    return chi[(static_cast<size_t>(comp0) * static_cast<size_t>(grid.nodes) +
                static_cast<size_t>(i)) *
                   static_cast<size_t>(grid.nodes) +
               static_cast<size_t>(j)];
  }
  // max |chi_2(u,v) + chi_3(-u,v)| over the grid (antisymmetry in relative
  // coordinates).
  double antisymmetry_residual() const;
};

SingleTimeState sample_single_time(const WaveFunction& psi, double t, const GridSpec& grid);

struct SchmidtSpectrum {
  std::vector<double> singular_values;
  int rank = 0;
  double svd_tol = 0.0;
};

// Numerical rank of chi reshaped over (s1, z1) x (s2, z2); singular values
// below svd_tol * sigma_max are dropped. Throws GridError if the grid
// truncates the support at time t.
SchmidtSpectrum schmidt_spectrum(const WaveFunction& psi, double t, const GridSpec& grid,
                                 double svd_tol = 1e-8);
int schmidt_rank(const WaveFunction& psi, double t, const GridSpec& grid, double svd_tol = 1e-8);

struct DeltaCheckEntry {
  double v = 0.0;
  double chi2_residual = 0.0;  // | lim_{u->0-} chi2 + e^{-i phi} lim_{u->0+} chi2 |
  double chi3_residual = 0.0;  // | lim_{u->0-} chi3 + e^{+i phi} lim_{u->0+} chi3 |
  double chi1_abs = 0.0;       // |chi1| extrapolated to u = 0 (both sides)
  double chi4_abs = 0.0;
};

struct DeltaReport {
  double t = 0.0;
  double eps = 0.0;
  std::vector<DeltaCheckEntry> entries;
  double max_phase_jump_residual = 0.0;
  double max_equal_sign_abs = 0.0;
};

// One-sided limits at the coincidence line u = 0 via Richardson
// extrapolation from u = +-eps, +-2 eps; N = 2 only.
DeltaReport delta_bc_check(const WaveFunction& psi, double t, std::span<const double> v_samples,
                           double eps);

// Two boundary configurations (Y1, Y2) and (X1, X2) on the boundary of the
// minimal-distance domain, connected by one characteristic of the (+,-)
// component, whose initial traces are (a1, a2) and (b1, b2).
struct AlphaInstance {
  double a1 = 0.0, b1 = 0.0, a2 = 0.0, b2 = 0.0;
  double alpha = 0.0;  // minimal space-like distance, > 0

  bool solved = false;
  double y1 = 0.0, t1 = 0.0, y2 = 0.0, t2 = 0.0;
  double x1 = 0.0, s1 = 0.0, x2 = 0.0, s2 = 0.0;
  double xi = 0.0;
  int root_sign = 0;
  double max_residual = 0.0;
};

// Solves the eight defining equations in closed form (light-cone reduction),
// evaluates both root branches, verifies all eight residuals plus the
// requirement that the connecting characteristic path stays inside the
// domain, and returns the qualifying branch. Throws NoRootError if neither
// branch qualifies.
AlphaInstance alpha_points(AlphaInstance inst);

struct AlphaConflictReport {
  complex boundary_chain;        // value forced at (Y1, Y2) via its own boundary condition
  complex characteristic_chain;  // value forced by transport from (X1, X2)
  double conflict = 0.0;
};

// Evaluates the two chains that over-determine psi_{+-} at (Y1, Y2): the
// boundary condition applied in place versus characteristic transport to
// (X1, X2) followed by the boundary condition there. A nonzero conflict for
// non-constant g_{-+} exhibits the non-existence of C^1 dynamics.
AlphaConflictReport alpha_contradiction_demo(
    const std::function<complex(double, double)>& g_minus_plus, const AlphaInstance& solved,
    double phi);

// Report text explaining why only the single-phase boundary family is
// exercised on the minimal-distance domain.
std::string alpha_bc_uniqueness_note();

}  // namespace mtdirac

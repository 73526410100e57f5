#pragma once
// Verification suites shared by the command-line `verify` command and the
// acceptance test binary: each suite measures one invariant of the model and
// compares it against a fixed threshold.

#include <random>

#include "mtdirac/analysis.hpp"
#include "mtdirac/geometry_current.hpp"
#include "mtdirac/lorentz.hpp"
#include "mtdirac/solver.hpp"

namespace mtdirac::verify {

struct SuiteResult {
  std::string name;
  bool pass = false;
  double statistic = 0.0;
  double threshold = 0.0;
  double runtime_seconds = 0.0;
  std::string detail;
  // Per-item measurements (e.g. one surface integral per leaf).
  std::vector<std::pair<std::string, double>> values;
};

// Canonical wedge data: n packets with pairwise disjoint supports and both
// spin amplitudes populated; compatible with arbitrary boundary phases.
std::vector<Packet> standard_packets(int n, int order = 6, bool modulated = false);
WaveFunction standard_wavefunction(const ModelParams& params, bool modulated = false);

// Random space-like configurations: positions ascending with gaps, adjacent
// time differences below the gaps (pairwise space-likeness then follows from
// the triangle inequality).
Configuration random_interior_configuration(int n, double zbox, double tmax, std::mt19937_64& rng);
// Stratum configuration with particles k, k+1 coincident; tie_time_zero
// forces the coincidence onto the initial surface where the characteristic
// values of the mixed pair tie.
Configuration random_stratum_configuration(int n, int k, double zbox, double tmax,
                                           bool tie_time_zero, std::mt19937_64& rng);
Hypersurface random_surface(double max_slope, double t_range, std::mt19937_64& rng);

// All maximal collision-reducing decomposition orders of the phase ledger;
// each entry is the resulting integer coefficient vector.
std::vector<std::vector<long long>> enumerate_phase_decompositions(const SpinIndex& s,
                                                                   const Permutation& pi);

// 1. Explicit three-particle solution versus direct data transport and the
//    trace engine.
SuiteResult exact_solution_suite(int points, double tol, uint64_t seed);
// 2. Surface-integral spread over random space-like leaves.
SuiteResult conservation_suite(const WaveFunction& psi, int n_surfaces, double max_slope,
                               double rel_tol, const QuadratureSpec& quad, uint64_t seed);
// 3. Flux balance at strata, plus an amplitude-and-phase-broken negative
//    control (only meaningful for the built-in N=2 setup).
SuiteResult flux_suite(double flux_tol, double control_min, uint64_t seed);
// Flux balance alone for a user-supplied wave function.
SuiteResult flux_suite_for(const WaveFunction& psi, double flux_tol, int samples_per_stratum,
                           uint64_t seed);
// 4. Boost covariance of the boundary conditions and of the surface norm.
SuiteResult lorentz_suite(const WaveFunction& psi, int n_boosts, double bc_tol, double norm_tol,
                          const QuadratureSpec& quad, uint64_t seed);
// Same checks at one fixed rapidity.
SuiteResult fixed_boost_suite(const WaveFunction& psi, double rapidity, double bc_tol,
                              double norm_tol, const QuadratureSpec& quad, uint64_t seed);
// 5. Path independence of the phase ledger and the collision sign pattern.
SuiteResult phase_suite(int samples, int max_n, uint64_t seed);
// 6. Central-difference residual of the first-order system over an h ladder.
SuiteResult residual_suite(const WaveFunction& psi, int points, double min_order, double floor,
                           uint64_t seed);
// 7. Bitwise antisymmetry of the continuation to unordered sectors.
SuiteResult antisymmetry_suite(const WaveFunction& psi, int samples, uint64_t seed);
// 8. Schmidt-rank dichotomy in the boundary phase and the closed-form
//    crossing structure of the mixed component.
SuiteResult entanglement_suite(double heaviside_tol, uint64_t seed);
// 9. Phase-jump relation of the equal-time model at the coincidence line.
SuiteResult delta_suite(double jump_tol, double equal_sign_tol);
// 10. Minimal-distance construction: published instance, residuals, conflict.
SuiteResult alpha_suite(double point_tol);

std::vector<SuiteResult> run_all_acceptance();

}  // namespace mtdirac::verify

#include "mtdirac/analysis.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <array>
#include <cmath>

namespace mtdirac {

double SingleTimeState::antisymmetry_residual() const {
  // chi_2(u,v) = -chi_3(-u,v); on the (z1, z2) grid this is
  // chi_2(z1, z2) = -chi_3(z2, z1).
  double worst = 0.0;
  for (int i = 0; i < grid.nodes; ++i)
    for (int j = 0; j < grid.nodes; ++j)
      worst = std::max(worst, std::abs(value(1, i, j) + value(2, j, i)));
  return worst;
}

SingleTimeState sample_single_time(const WaveFunction& psi, double t, const GridSpec& grid) {
  if (psi.n() != 2) throw std::invalid_argument("sample_single_time: N must be 2");
  const double reach = psi.data().support_radius() + std::abs(t);
  if (grid.z_min > -reach || grid.z_max < reach)
    throw GridError("sample_single_time: grid truncates the support at time t");

  SingleTimeState st;
  st.t = t;
  st.grid = grid;
  const int ng = grid.nodes;
  st.chi.resize(4 * static_cast<size_t>(ng) * static_cast<size_t>(ng));
  std::array<complex, 4> buf;
  for (int i = 0; i < ng; ++i) {
    for (int j = 0; j < ng; ++j) {
      const double zs[2] = {grid.node(i), grid.node(j)};
      psi.evaluate_all_full(Configuration::equal_time(t, zs), buf);
      for (int c = 0; c < 4; ++c)
        st.chi[(static_cast<size_t>(c) * static_cast<size_t>(ng) + static_cast<size_t>(i)) *
                   static_cast<size_t>(ng) +
               static_cast<size_t>(j)] = buf[static_cast<size_t>(c)];
    }
  }
  return st;
}

SchmidtSpectrum schmidt_spectrum(const WaveFunction& psi, double t, const GridSpec& grid,
                                 double svd_tol) {
  const SingleTimeState st = sample_single_time(psi, t, grid);
  const int ng = grid.nodes;

  // Guard against support leaking past the grid edges.
  double edge = 0.0, bulk = 0.0;
  for (int c = 0; c < 4; ++c)
    for (int i = 0; i < ng; ++i)
      for (int j = 0; j < ng; ++j) {
        const double a = std::abs(st.value(c, i, j));
        bulk = std::max(bulk, a);
        if (i == 0 || j == 0 || i == ng - 1 || j == ng - 1) edge = std::max(edge, a);
      }
  if (bulk > 0.0 && edge > 1e-12 * bulk)
    throw GridError("schmidt_spectrum: support truncated by the grid");

  Eigen::MatrixXcd m(2 * ng, 2 * ng);
  for (int s1 = 0; s1 < 2; ++s1)
    for (int s2 = 0; s2 < 2; ++s2)
      for (int i = 0; i < ng; ++i)
        for (int j = 0; j < ng; ++j)
          m(s1 * ng + i, s2 * ng + j) = st.value(s1 * 2 + s2, i, j);

  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
  SchmidtSpectrum out;
  out.svd_tol = svd_tol;
  out.singular_values.assign(svd.singularValues().data(),
                             svd.singularValues().data() + svd.singularValues().size());
  const double smax = out.singular_values.empty() ? 0.0 : out.singular_values.front();
  for (double s : out.singular_values)
    if (smax > 0.0 && s > svd_tol * smax) ++out.rank;
  return out;
}

int schmidt_rank(const WaveFunction& psi, double t, const GridSpec& grid, double svd_tol) {
  return schmidt_spectrum(psi, t, grid, svd_tol).rank;
}

DeltaReport delta_bc_check(const WaveFunction& psi, double t, std::span<const double> v_samples,
                           double eps) {
  if (psi.n() != 2) throw std::invalid_argument("delta_bc_check: N must be 2");
  if (!(eps > 0.0)) throw std::invalid_argument("delta_bc_check: eps must be positive");
  const double phi = psi.params().phase(0);
  const complex em = std::polar(1.0, -phi);
  const complex ep = std::polar(1.0, +phi);

  DeltaReport report;
  report.t = t;
  report.eps = eps;

  auto chi = [&psi, t](int comp0, double u, double v) {
    const double zs[2] = {v + u, v - u};
    return psi.evaluate_full(Configuration::equal_time(t, zs),
                             spin_of_index(comp0 + 1, 2));
  };
  // Linear Richardson toward u = 0 from one side.
  auto limit = [&chi](int comp0, double side, double eps_, double v) {
    return 2.0 * chi(comp0, side * eps_, v) - chi(comp0, side * 2.0 * eps_, v);
  };

  for (double v : v_samples) {
    DeltaCheckEntry e;
    e.v = v;
    const complex chi2_minus = limit(1, -1.0, eps, v);
    const complex chi2_plus = limit(1, +1.0, eps, v);
    const complex chi3_minus = limit(2, -1.0, eps, v);
    const complex chi3_plus = limit(2, +1.0, eps, v);
    e.chi2_residual = std::abs(chi2_minus + em * chi2_plus);
    e.chi3_residual = std::abs(chi3_minus + ep * chi3_plus);
    e.chi1_abs = std::max(std::abs(limit(0, -1.0, eps, v)), std::abs(limit(0, +1.0, eps, v)));
    e.chi4_abs = std::max(std::abs(limit(3, -1.0, eps, v)), std::abs(limit(3, +1.0, eps, v)));
    report.max_phase_jump_residual =
        std::max({report.max_phase_jump_residual, e.chi2_residual, e.chi3_residual});
    report.max_equal_sign_abs = std::max({report.max_equal_sign_abs, e.chi1_abs, e.chi4_abs});
    report.entries.push_back(e);
  }
  return report;
}

namespace {

struct AlphaCandidate {
  AlphaInstance inst;
  bool residuals_ok = false;
  bool path_ok = false;
};

AlphaCandidate try_root(AlphaInstance inst, int root_sign, double xi) {
  const double a1 = inst.a1, b1 = inst.b1, a2 = inst.a2, b2 = inst.b2;
  const double alpha2 = inst.alpha * inst.alpha;
  const double E = b2 - a2;

  // Light-cone reduction: p = y1 + t1 = x1 + s1, q = y2 - t2 = x2 - s2.
  const double p = a2 + 0.5 * (E + root_sign * xi);
  if (p == a2) return {};
  const double q = a1 - alpha2 / (p - a2);

  AlphaInstance out = inst;
  out.y1 = 0.5 * (p + a1);
  out.t1 = 0.5 * (p - a1);
  out.y2 = 0.5 * (a2 + q);
  out.t2 = 0.5 * (a2 - q);
  out.x1 = 0.5 * (p + b1);
  out.s1 = 0.5 * (p - b1);
  out.x2 = 0.5 * (b2 + q);
  out.s2 = 0.5 * (b2 - q);
  out.xi = xi;
  out.root_sign = root_sign;

  const double scale = std::max({1.0, std::abs(a1), std::abs(b1), std::abs(a2), std::abs(b2),
                                 std::abs(p), std::abs(q), alpha2});
  double r = 0.0;
  r = std::max(r, std::abs(out.y1 - out.t1 - a1));
  r = std::max(r, std::abs(out.y2 + out.t2 - a2));
  r = std::max(r, std::abs((out.t1 - out.t2) * (out.t1 - out.t2) -
                           ((out.y1 - out.y2) * (out.y1 - out.y2) - alpha2)));
  r = std::max(r, std::abs(out.x1 - out.s1 - b1));
  r = std::max(r, std::abs(out.x2 + out.s2 - b2));
  r = std::max(r, std::abs((out.s1 - out.s2) * (out.s1 - out.s2) -
                           ((out.x1 - out.x2) * (out.x1 - out.x2) - alpha2)));
  r = std::max(r, std::abs(out.x1 + out.s1 - (out.y1 + out.t1)));
  r = std::max(r, std::abs(out.x2 - out.s2 - (out.y2 - out.t2)));
  out.max_residual = r;
  out.solved = true;

  AlphaCandidate cand;
  cand.inst = out;
  cand.residuals_ok = r <= 1e-9 * scale;
  // The connecting path (move particle 2 from Y2 to X2, then particle 1 from
  // Y1 to X1) stays inside the closed domain iff the intermediate
  // configuration (Y1, X2) is at least alpha-separated; the interval along
  // each leg is linear in the light-cone coordinate.
  const double mid_interval = (p - b2) * (a1 - q);
  cand.path_ok = mid_interval >= alpha2 * (1.0 - 1e-12);
  return cand;
}

}  // namespace

AlphaInstance alpha_points(AlphaInstance inst) {
  if (!(inst.a1 < inst.b1 && inst.b1 < inst.a2 && inst.a2 < inst.b2))
    throw std::invalid_argument("alpha_points: need a1 < b1 < a2 < b2");
  if (!(inst.alpha > 0.0)) throw std::invalid_argument("alpha_points: alpha must be positive");

  const double D = inst.b1 - inst.a1;
  const double E = inst.b2 - inst.a2;
  const double alpha2 = inst.alpha * inst.alpha;
  const double radicand = (E * E * D + 4.0 * alpha2 * E) / D;
  const double xi = std::sqrt(radicand);

  const AlphaCandidate minus = try_root(inst, -1, xi);
  const AlphaCandidate plus = try_root(inst, +1, xi);
  if (minus.residuals_ok && minus.path_ok) return minus.inst;
  if (plus.residuals_ok && plus.path_ok) return plus.inst;
  throw NoRootError("alpha_points: neither root branch satisfies the constraints");
}

AlphaConflictReport alpha_contradiction_demo(
    const std::function<complex(double, double)>& g_minus_plus, const AlphaInstance& solved,
    double phi) {
  if (!solved.solved) throw std::invalid_argument("alpha_contradiction_demo: unsolved instance");
  const complex bc = std::polar(1.0, phi);
  AlphaConflictReport report;
  // The (-,+) characteristic through (Y1, Y2) meets the initial surface at
  // (a1, a2); through (X1, X2) at (b1, b2).
  report.boundary_chain = bc * g_minus_plus(solved.a1, solved.a2);
  report.characteristic_chain = bc * g_minus_plus(solved.b1, solved.b2);
  report.conflict = std::abs(report.boundary_chain - report.characteristic_chain);
  return report;
}

std::string alpha_bc_uniqueness_note() {
  return
      "On the minimal-space-like-distance domain, antisymmetry together with "
      "probability conservation on equal-time slices forces |psi_{+-}| = |psi_{-+}| "
      "pointwise on the boundary, so any admissible boundary condition is a pure "
      "phase linking the two mixed components. Invariance under Poincare "
      "transformations forces that phase to be constant on each of the two "
      "connected boundary components, and antisymmetry fixes the two constants to "
      "be opposite. The demonstration therefore only exercises boundary conditions "
      "of the form psi_{+-} = exp(+-i phi) psi_{-+}; no other family is available "
      "to test.";
}

}  // namespace mtdirac

#include "mtdirac/initial_data.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

namespace mtdirac {

double bump(double x, int order) {
  const double u = 1.0 - x * x;
  if (u <= 0.0) return 0.0;
  double p = u;
  for (int i = 0; i < order; ++i) p *= u;
  return p;
}

complex Packet::component(int sign, double z) const {
  const complex amp = sign > 0 ? amp_plus : amp_minus;
  if (amp == complex{}) return {};
  const double b = bump((z - center) / width, order);
  if (b == 0.0) return {};
  const double q = sign > 0 ? wavenumber_plus : wavenumber_minus;
  if (q == 0.0) return amp * b;
  return amp * b * std::polar(1.0, q * (z - center));
}

namespace {

class CallableImpl final : public InitialData::Impl {
 public:
  CallableImpl(int n, int smoothness, double radius, bool off_simplex,
               std::vector<InitialData::ComponentFn> comps)
      : Impl(n, smoothness, radius, off_simplex), comps_(std::move(comps)) {}

  complex eval(int index0, std::span<const double> zs) const override {
    const auto& f = comps_[static_cast<size_t>(index0)];
    return f ? f(zs) : complex{};
  }

 private:
  std::vector<InitialData::ComponentFn> comps_;
};

complex det_destructive(std::span<complex> m, int n) {
  if (n == 1) return m[0];
  if (n == 2) return m[0] * m[3] - m[1] * m[2];
  if (n == 3) {
    return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
           m[2] * (m[3] * m[7] - m[4] * m[6]);
  }
  complex det = 1.0;
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    double best = std::abs(m[static_cast<size_t>(col * n + col)]);
    for (int r = col + 1; r < n; ++r) {
      const double a = std::abs(m[static_cast<size_t>(r * n + col)]);
      if (a > best) {
        best = a;
        pivot = r;
      }
    }
    if (best == 0.0) return {};
    if (pivot != col) {
      for (int c = 0; c < n; ++c)
        std::swap(m[static_cast<size_t>(pivot * n + c)], m[static_cast<size_t>(col * n + c)]);
      det = -det;
    }
    const complex d = m[static_cast<size_t>(col * n + col)];
    det *= d;
    for (int r = col + 1; r < n; ++r) {
      const complex f = m[static_cast<size_t>(r * n + col)] / d;
      if (f == complex{}) continue;
      for (int c = col; c < n; ++c)
        m[static_cast<size_t>(r * n + c)] -= f * m[static_cast<size_t>(col * n + c)];
    }
  }
  return det;
}

class WedgeImpl final : public InitialData::Impl {
 public:
  WedgeImpl(std::vector<Packet> packets, int smoothness, double radius)
      : Impl(static_cast<int>(packets.size()), smoothness, radius, true),
        packets_(std::move(packets)) {}

  complex eval(int index0, std::span<const double> zs) const override {
    const int n = n_;
    std::vector<complex> m(static_cast<size_t>(n * n));
    bool any = false;
    for (int j = 0; j < n; ++j) {
      const int sj = sign_of_component(index0, n, j);
      for (int i = 0; i < n; ++i) {
        const complex v = packets_[static_cast<size_t>(i)].component(sj, zs[static_cast<size_t>(j)]);
        m[static_cast<size_t>(i * n + j)] = v;
        any = any || v != complex{};
      }
    }
    if (!any) return {};
    return det_destructive(m, n);
  }

 private:
  std::vector<Packet> packets_;
};

int permutation_parity_sign(std::span<const int> p) {
  int inv = 0;
  for (size_t a = 0; a < p.size(); ++a)
    for (size_t b = a + 1; b < p.size(); ++b)
      if (p[a] > p[b]) ++inv;
  return inv % 2 == 0 ? +1 : -1;
}

}  // namespace

InitialData InitialData::from_callables(int n, int smoothness, double support_radius,
                                        std::vector<ComponentFn> components, bool off_simplex) {
  if (static_cast<int>(components.size()) != (1 << n))
    throw std::invalid_argument("InitialData: need 2^N component functions");
  return InitialData(std::make_shared<CallableImpl>(n, smoothness, support_radius, off_simplex,
                                                    std::move(components)));
}

InitialData wedge_family(const std::vector<Packet>& packets) {
  if (packets.size() < 2) throw std::invalid_argument("wedge_family: need at least two packets");
  int m = packets.front().order;
  double radius = 0.0;
  for (const Packet& p : packets) {
    if (p.width <= 0.0) throw std::invalid_argument("wedge_family: packet width must be positive");
    m = std::min(m, p.order);
    radius = std::max({radius, std::abs(p.support_lo()), std::abs(p.support_hi())});
  }
  return InitialData(std::make_shared<WedgeImpl>(packets, m, radius));
}

InitialData reflect_family(const ModelParams& params, double radius, double amp_factor,
                           double phase_offset) {
  if (params.n() != 2) throw std::invalid_argument("reflect_family: N must be 2");
  if (radius <= 0.0) throw std::invalid_argument("reflect_family: radius must be positive");
  const int m = params.smoothness();
  const double R = radius;
  auto profile = [R, m](double z1, double z2) -> complex {
    const double b = bump(z1 / R, m) * bump(z2 / R, m);
    if (b == 0.0) return {};
    const complex osc1 = std::polar(0.8 + 0.3 * z1 / R, 1.3 * z1 / R);
    const complex osc2 = std::polar(1.0, -0.7 * z2 / R) * (0.4 - 0.5 * z2 / R);
    return b * (osc1 + osc2);
  };
  const complex swap_factor = amp_factor * std::polar(1.0, -(params.phase(0) + phase_offset));

  std::vector<InitialData::ComponentFn> comps(4);
  comps[2] = [profile](std::span<const double> z) { return profile(z[0], z[1]); };
  comps[1] = [profile, swap_factor](std::span<const double> z) {
    return swap_factor * profile(z[1], z[0]);
  };
  return InitialData::from_callables(2, m, radius, std::move(comps), true);
}

ProductFamily::ProductFamily(Packet right_packet, Packet left_packet)
    : right(right_packet), left(left_packet) {
  if (right.amp_minus != complex{} || left.amp_plus != complex{})
    throw std::invalid_argument("ProductFamily: packets must be pure chirality (right '+', left '-')");
}

double ProductFamily::antisymmetry_residual(std::span<const double> zs) const {
  double worst = 0.0;
  for (double z1 : zs)
    for (double z2 : zs)
      worst = std::max(worst, std::abs(alpha(z1) * beta(z2) + gamma(z2) * delta(z1)));
  return worst;
}

InitialData ProductFamily::to_initial_data() const { return wedge_family({right, left}); }

InitialData antisymmetrize(const InitialData& raw) {
  if (!raw.valid()) throw std::invalid_argument("antisymmetrize: empty data");
  if (!raw.off_simplex())
    throw std::invalid_argument(
        "antisymmetrize: data restricted to the ordered sector already fixes its antisymmetric "
        "extension; provide components defined on all of R^N");
  const int n = raw.n();
  std::vector<std::vector<int>> perms;
  std::vector<int> signs;
  {
    std::vector<int> p(static_cast<size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    do {
      perms.push_back(p);
      signs.push_back(permutation_parity_sign(p));
    } while (std::next_permutation(p.begin(), p.end()));
  }
  const double norm = 1.0 / static_cast<double>(perms.size());
  const int nc = 1 << n;

  std::vector<InitialData::ComponentFn> comps(static_cast<size_t>(nc));
  for (int idx0 = 0; idx0 < nc; ++idx0) {
    comps[static_cast<size_t>(idx0)] = [raw, idx0, n, perms, signs, norm](
                                           std::span<const double> zs) -> complex {
      complex acc{};
      std::array<double, 16> zz{};
      for (size_t pi = 0; pi < perms.size(); ++pi) {
        const std::vector<int>& p = perms[pi];
        int pidx = 0;
        for (int k = 0; k < n; ++k) {
          const int bit = (idx0 >> (n - 1 - p[static_cast<size_t>(k)])) & 1;
          pidx = (pidx << 1) | bit;
          zz[static_cast<size_t>(k)] = zs[static_cast<size_t>(p[static_cast<size_t>(k)])];
        }
        acc += static_cast<double>(signs[pi]) *
               raw.component(pidx, std::span<const double>(zz.data(), static_cast<size_t>(n)));
      }
      return acc * norm;
    };
  }
  return InitialData::from_callables(n, raw.smoothness(), raw.support_radius(), std::move(comps),
                                     true);
}

GridSpec GridSpec::covering(const InitialData& data, int nodes, double pad_fraction) {
  const double r = data.support_radius() * (1.0 + pad_fraction);
  return GridSpec{-r, r, nodes};
}

bool ValidationReport::pass() const {
  for (const ValidationEntry& e : entries)
    if (!e.pass) return false;
  return true;
}

double ValidationReport::max_violation(const std::string& check) const {
  double worst = 0.0;
  for (const ValidationEntry& e : entries)
    if (e.check == check) worst = std::max(worst, e.violation);
  return worst;
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  for (const ValidationEntry& e : entries) {
    os << (e.pass ? "pass " : "FAIL ") << e.check;
    if (e.stratum >= 0) os << " stratum=" << e.stratum;
    if (e.order > 0) os << " order=" << e.order;
    os << " violation=" << e.violation << " tol=" << e.tolerance;
    if (!e.note.empty()) os << " (" << e.note << ")";
    os << '\n';
  }
  return os.str();
}

namespace {

// Finite-difference weights on arbitrary nodes: w[d][j] multiplies f(x[j]) in
// the d-th derivative at x0, for d = 0..max_order.
std::vector<std::vector<double>> fornberg_weights(double x0, std::span<const double> x,
                                                  int max_order) {
  const int nd = static_cast<int>(x.size()) - 1;
  std::vector<std::vector<double>> c(static_cast<size_t>(max_order + 1),
                                     std::vector<double>(x.size(), 0.0));
  double c1 = 1.0;
  double c4 = x[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i <= nd; ++i) {
    const int mn = std::min(i, max_order);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[static_cast<size_t>(i)] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = x[static_cast<size_t>(i)] - x[static_cast<size_t>(j)];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c[static_cast<size_t>(k)][static_cast<size_t>(i)] =
              c1 *
              (k * c[static_cast<size_t>(k - 1)][static_cast<size_t>(i - 1)] -
               c5 * c[static_cast<size_t>(k)][static_cast<size_t>(i - 1)]) /
              c2;
        c[0][static_cast<size_t>(i)] = -c1 * c5 * c[0][static_cast<size_t>(i - 1)] / c2;
      }
      for (int k = mn; k >= 1; --k)
        c[static_cast<size_t>(k)][static_cast<size_t>(j)] =
            (c4 * c[static_cast<size_t>(k)][static_cast<size_t>(j)] -
             k * c[static_cast<size_t>(k - 1)][static_cast<size_t>(j)]) /
            c3;
      c[0][static_cast<size_t>(j)] = c4 * c[0][static_cast<size_t>(j)] / c3;
    }
    c1 = c2;
  }
  return c;
}

// Random ordered tuples with slots k and k+1 tied, keeping a clearance from
// the remaining coordinates so transverse stencils stay inside the sector.
std::vector<std::vector<double>> stratum_samples(const GridSpec& grid, int n, int k,
                                                 double clearance, int count, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(grid.z_min, grid.z_max);
  std::vector<std::vector<double>> out;
  out.reserve(static_cast<size_t>(count));
  int guard = count * 400;
  while (static_cast<int>(out.size()) < count && guard-- > 0) {
    std::vector<double> others;
    for (int i = 0; i < n - 2; ++i) others.push_back(uni(rng));
    std::sort(others.begin(), others.end());
    const double d = uni(rng);
    std::vector<double> tuple;
    bool ok = true;
    for (int i = 0; i < k; ++i) {
      if (others[static_cast<size_t>(i)] > d - clearance) ok = false;
      tuple.push_back(others[static_cast<size_t>(i)]);
    }
    tuple.push_back(d);
    tuple.push_back(d);
    for (int i = k; i < n - 2; ++i) {
      if (others[static_cast<size_t>(i)] < d + clearance) ok = false;
      tuple.push_back(others[static_cast<size_t>(i)]);
    }
    if (ok) out.push_back(std::move(tuple));
  }
  return out;
}

}  // namespace

ValidationReport validate(const InitialData& data, const ModelParams& params,
                          const GridSpec& grid, double value_tol, double derivative_tol) {
  if (!data.valid()) throw std::invalid_argument("validate: empty data");
  if (data.n() != params.n()) throw std::invalid_argument("validate: particle count mismatch");
  if (grid.nodes < 4 || grid.step() <= 0.0) throw std::invalid_argument("validate: bad grid");

  const int n = params.n();
  const int nc = params.n_components();
  const int m = std::min(params.smoothness(), data.smoothness());
  const double radius = data.support_radius();
  ValidationReport report;

  // Compact support: scan ordered tuples with at least one coordinate beyond
  // the declared radius.
  {
    double worst = 0.0;
    bool sampled = false;
    std::mt19937_64 rng(2026);
    std::uniform_real_distribution<double> uni(grid.z_min, grid.z_max);
    if (grid.z_max > radius) {
      for (int trial = 0; trial < 400; ++trial) {
        std::vector<double> zs(static_cast<size_t>(n));
        for (double& z : zs) z = uni(rng);
        std::sort(zs.begin(), zs.end());
        double maxabs = 0.0;
        for (double z : zs) maxabs = std::max(maxabs, std::abs(z));
        if (maxabs <= radius) {
          // push one coordinate outside
          zs.back() = radius + (grid.z_max - radius) * 0.5;
          std::sort(zs.begin(), zs.end());
        }
        sampled = true;
        for (int c = 0; c < nc; ++c)
          worst = std::max(worst, std::abs(data.component(c, zs)));
      }
    }
    ValidationEntry e;
    e.check = "support";
    e.violation = worst;
    e.tolerance = value_tol;
    e.pass = worst <= value_tol;
    if (!sampled) e.note = "grid does not extend beyond the support radius";
    report.entries.push_back(std::move(e));
  }

  // Transverse one-sided stencils at two step sizes: the coarse/fine
  // disagreement bounds the truncation error of the estimates themselves, so
  // a C^m transition passes for any derivative magnitude while a genuine
  // mismatch (which does not shrink with the step) is flagged.
  const double clearance = 0.06 * (grid.z_max - grid.z_min);
  const double h = clearance / static_cast<double>(m + 3);
  std::vector<double> nodes_h(static_cast<size_t>(m + 2)), nodes_h2(static_cast<size_t>(m + 2));
  for (int i = 0; i <= m + 1; ++i) {
    nodes_h[static_cast<size_t>(i)] = h * i;
    nodes_h2[static_cast<size_t>(i)] = 0.5 * h * i;
  }
  const auto weights_h = fornberg_weights(0.0, nodes_h, m);
  const auto weights_h2 = fornberg_weights(0.0, nodes_h2, m);

  for (int k = 0; k + 1 < n; ++k) {
    const complex phase_fac = std::polar(1.0, params.phase(k));
    const int samples = n == 2 ? 160 : 96;
    const auto bases = stratum_samples(grid, n, k, clearance * 1.2, samples, 77001 + 13 * k);

    double value_worst = 0.0;
    std::vector<double> worst_ratio(static_cast<size_t>(m + 1), 0.0);
    std::vector<double> worst_violation(static_cast<size_t>(m + 1), 0.0);
    std::vector<double> worst_tolerance(static_cast<size_t>(m + 1), value_tol);
    double gmax = 0.0;

    auto sample_side = [&](int comp0, const std::vector<double>& base, double zdiag,
                           std::span<const double> nodes, std::vector<complex>& out) {
      std::vector<double> zs = base;
      out.resize(nodes.size());
      for (size_t i = 0; i < nodes.size(); ++i) {
        zs[static_cast<size_t>(k)] = zdiag - nodes[i];
        zs[static_cast<size_t>(k) + 1] = zdiag + nodes[i];
        out[i] = data.component(comp0, zs);
        gmax = std::max(gmax, std::abs(out[i]));
      }
    };
    auto estimate = [](const std::vector<std::vector<double>>& weights, int d,
                       const std::vector<complex>& f) {
      complex acc{};
      for (size_t i = 0; i < f.size(); ++i) acc += weights[static_cast<size_t>(d)][i] * f[i];
      return acc;
    };

    std::vector<complex> a_h, a_h2, b_h, b_h2;
    for (const auto& base : bases) {
      for (int idx0 = 0; idx0 < nc; ++idx0) {
        if (sign_of_component(idx0, n, k) != +1 || sign_of_component(idx0, n, k + 1) != -1)
          continue;
        const int swapped0 = component_index(spin_of_index(idx0 + 1, n).with_adjacent_swapped(k)) - 1;
        const double zdiag = base[static_cast<size_t>(k)];
        sample_side(idx0, base, zdiag, nodes_h, a_h);
        sample_side(idx0, base, zdiag, nodes_h2, a_h2);
        sample_side(swapped0, base, zdiag, nodes_h, b_h);
        sample_side(swapped0, base, zdiag, nodes_h2, b_h2);

        value_worst = std::max(value_worst, std::abs(a_h[0] - phase_fac * b_h[0]));
        for (int d = 1; d <= m; ++d) {
          const complex adh = estimate(weights_h, d, a_h);
          const complex adf = estimate(weights_h2, d, a_h2);
          const complex bdh = estimate(weights_h, d, b_h);
          const complex bdf = estimate(weights_h2, d, b_h2);
          const double sign = d % 2 == 0 ? 1.0 : -1.0;
          const double r = std::abs(adf - sign * phase_fac * bdf);
          const double richardson = std::abs(adh - adf) + std::abs(bdh - bdf);
          double wsum = 0.0;
          for (double w : weights_h2[static_cast<size_t>(d)]) wsum += std::abs(w);
          const double noise = 64.0 * 1e-16 * std::max(gmax, 1e-30) * wsum;
          // The Richardson scale can under-estimate the top-order truncation
          // near the support edge (f^(m+2) need not exist there); a genuine
          // transition mismatch does not shrink with the step, so a wide
          // truncation allowance keeps it detectable.
          const double tol =
              derivative_tol * std::max({1.0, std::abs(adf), std::abs(bdf)}) + 12.0 * richardson +
              noise;
          const double ratio = r / tol;
          if (ratio > worst_ratio[static_cast<size_t>(d)]) {
            worst_ratio[static_cast<size_t>(d)] = ratio;
            worst_violation[static_cast<size_t>(d)] = r;
            worst_tolerance[static_cast<size_t>(d)] = tol;
          }
        }
      }
    }

    {
      ValidationEntry e;
      e.check = "compatibility";
      e.stratum = k;
      e.violation = value_worst;
      e.tolerance = value_tol;
      e.pass = value_worst <= value_tol;
      report.entries.push_back(std::move(e));
    }
    for (int d = 1; d <= m; ++d) {
      ValidationEntry e;
      e.check = "transition";
      e.stratum = k;
      e.order = d;
      e.violation = worst_violation[static_cast<size_t>(d)];
      e.tolerance = worst_tolerance[static_cast<size_t>(d)];
      e.pass = worst_ratio[static_cast<size_t>(d)] <= 1.0;
      report.entries.push_back(std::move(e));
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Tabulated-grid file format
// ---------------------------------------------------------------------------

namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

uint64_t pack_key(std::span<const int> idx) {
  uint64_t key = 0;
  for (size_t k = 0; k < idx.size(); ++k)
    key |= static_cast<uint64_t>(idx[k]) << (16 * k);
  return key;
}

long long ordered_tuple_count(int nodes, int n) {
  // C(nodes + n - 1, n)
  long long val = 1;
  for (int i = 1; i <= n; ++i) val = val * (nodes + i - 1) / i;
  return val;
}

class GridImpl final : public InitialData::Impl {
 public:
  GridImpl(int n, int smoothness, double radius, std::vector<double> nodes,
           std::vector<std::vector<std::pair<uint64_t, complex>>> values)
      : Impl(n, smoothness, radius, false),
        nodes_(std::move(nodes)),
        values_(std::move(values)),
        degree_(std::min(smoothness, static_cast<int>(nodes_.size()) - 1)) {}

  complex eval(int index0, std::span<const double> zs) const override {
    for (double z : zs)
      if (z < nodes_.front() || z > nodes_.back()) return {};
    std::array<int, 16> idx{};
    return interp(index0, 0, 0, zs, idx);
  }

  complex value_at(int comp, std::span<const int> idx) const {
    const auto& table = values_[static_cast<size_t>(comp)];
    const uint64_t key = pack_key(idx);
    auto it = std::lower_bound(table.begin(), table.end(), key,
                               [](const auto& kv, uint64_t k) { return kv.first < k; });
    if (it == table.end() || it->first != key)
      throw GridError("grid data: missing tabulated value");
    return it->second;
  }

 private:
  // Nested local Lagrange interpolation. Stencils are clamped so every index
  // combination stays inside the ordered simplex; one-sided stencils appear
  // near the coincidence diagonal.
  complex interp(int comp, int dim, int clamp_lo, std::span<const double> zs,
                 std::array<int, 16>& idx) const {
    const int g = static_cast<int>(nodes_.size());
    const double z = zs[static_cast<size_t>(dim)];
    int hi = static_cast<int>(std::upper_bound(nodes_.begin(), nodes_.end(), z) - nodes_.begin());
    int start = std::min(hi - (degree_ + 2) / 2, g - 1 - degree_);
    start = std::max(start, clamp_lo);
    const int count = std::min(degree_ + 1, g - start);

    complex acc{};
    for (int j = 0; j < count; ++j) {
      const int node_j = start + j;
      double w = 1.0;
      for (int l = 0; l < count; ++l) {
        if (l == j) continue;
        w *= (z - nodes_[static_cast<size_t>(start + l)]) /
             (nodes_[static_cast<size_t>(node_j)] - nodes_[static_cast<size_t>(start + l)]);
      }
      if (w == 0.0) continue;
      idx[static_cast<size_t>(dim)] = node_j;
      const complex inner =
          dim + 1 < n_ ? interp(comp, dim + 1, node_j, zs, idx)
                       : value_at(comp, std::span<const int>(idx.data(), static_cast<size_t>(n_)));
      acc += w * inner;
    }
    return acc;
  }

  std::vector<double> nodes_;
  std::vector<std::vector<std::pair<uint64_t, complex>>> values_;
  int degree_;
};

}  // namespace

void save_initial_data(const InitialData& data, const std::string& path, int grid_nodes) {
  if (!data.valid()) throw std::invalid_argument("save_initial_data: empty data");
  if (grid_nodes < 2) throw std::invalid_argument("save_initial_data: need at least two nodes");
  const int n = data.n();
  if (n > 4) throw std::invalid_argument("save_initial_data: grid files support N <= 4");
  const double r = data.support_radius();

  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_initial_data: cannot open " + path);
  out << "N=" << n << " m=" << data.smoothness() << " R=" << g17(r) << " grid=" << grid_nodes
      << "\n";

  std::vector<double> nodes(static_cast<size_t>(grid_nodes));
  for (int i = 0; i < grid_nodes; ++i)
    nodes[static_cast<size_t>(i)] = -r + 2.0 * r * static_cast<double>(i) / (grid_nodes - 1);

  std::vector<int> idx(static_cast<size_t>(n), 0);
  std::vector<double> zs(static_cast<size_t>(n));
  for (int comp = 0; comp < (1 << n); ++comp) {
    out << "component " << (comp + 1) << "\n";
    std::fill(idx.begin(), idx.end(), 0);
    for (;;) {
      for (int k = 0; k < n; ++k) zs[static_cast<size_t>(k)] = nodes[static_cast<size_t>(idx[static_cast<size_t>(k)])];
      const complex v = data.component(comp, zs);
      for (int k = 0; k < n; ++k) out << g17(zs[static_cast<size_t>(k)]) << ' ';
      out << g17(v.real()) << ' ' << g17(v.imag()) << "\n";
      // next non-decreasing index tuple
      int k = n - 1;
      while (k >= 0 && idx[static_cast<size_t>(k)] == grid_nodes - 1) --k;
      if (k < 0) break;
      const int v0 = idx[static_cast<size_t>(k)] + 1;
      for (int l = k; l < n; ++l) idx[static_cast<size_t>(l)] = v0;
    }
  }
}

InitialData load_initial_data(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_initial_data: cannot open " + path);

  std::string header;
  if (!std::getline(in, header)) throw std::runtime_error("load_initial_data: malformed header");
  int n = 0, m = 0, grid = 0;
  double r = 0.0;
  if (std::sscanf(header.c_str(), "N=%d m=%d R=%lf grid=%d", &n, &m, &r, &grid) != 4)
    throw std::runtime_error("load_initial_data: malformed header");
  if (n < 2 || n > 4 || m < 1 || grid < 2 || r <= 0.0)
    throw std::runtime_error("load_initial_data: malformed header");

  const int nc = 1 << n;
  const long long rows_expected = ordered_tuple_count(grid, n);

  std::vector<std::vector<double>> row_z;
  std::vector<std::vector<std::pair<std::vector<double>, complex>>> raw(
      static_cast<size_t>(nc));
  std::vector<double> all_z;

  std::string line;
  int current = -1;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string word;
    if (line.rfind("component", 0) == 0) {
      ls >> word;
      int ci = 0;
      if (!(ls >> ci) || ci < 1 || ci > nc)
        throw std::runtime_error("load_initial_data: component count != 2^N");
      current = ci - 1;
      continue;
    }
    if (current < 0) throw std::runtime_error("load_initial_data: row before component block");
    std::vector<double> zs(static_cast<size_t>(n));
    double re = 0.0, im = 0.0;
    for (int k = 0; k < n; ++k)
      if (!(ls >> zs[static_cast<size_t>(k)]))
        throw std::runtime_error("load_initial_data: bad row");
    if (!(ls >> re >> im)) throw std::runtime_error("load_initial_data: bad row");
    for (int k = 0; k + 1 < n; ++k)
      if (zs[static_cast<size_t>(k)] > zs[static_cast<size_t>(k) + 1])
        throw std::runtime_error("load_initial_data: row outside the ordered simplex");
    all_z.insert(all_z.end(), zs.begin(), zs.end());
    raw[static_cast<size_t>(current)].push_back({std::move(zs), complex(re, im)});
  }

  // Recover the 1D node set.
  std::sort(all_z.begin(), all_z.end());
  std::vector<double> nodes;
  for (double z : all_z) {
    if (nodes.empty() || z - nodes.back() > 1e-12 * (1.0 + std::abs(z))) nodes.push_back(z);
  }
  if (static_cast<int>(nodes.size()) != grid)
    throw std::runtime_error("load_initial_data: non-monotone grid");
  for (size_t i = 0; i + 1 < nodes.size(); ++i)
    if (!(nodes[i] < nodes[i + 1]))
      throw std::runtime_error("load_initial_data: non-monotone grid");

  auto node_index = [&nodes](double z) -> int {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), z - 1e-12 * (1.0 + std::abs(z)));
    if (it == nodes.end() || std::abs(*it - z) > 1e-12 * (1.0 + std::abs(z)))
      throw std::runtime_error("load_initial_data: coordinate off the tensor grid");
    return static_cast<int>(it - nodes.begin());
  };

  std::vector<std::vector<std::pair<uint64_t, complex>>> values(static_cast<size_t>(nc));
  for (int c = 0; c < nc; ++c) {
    if (static_cast<long long>(raw[static_cast<size_t>(c)].size()) != rows_expected)
      throw std::runtime_error("load_initial_data: incomplete component block");
    auto& table = values[static_cast<size_t>(c)];
    table.reserve(raw[static_cast<size_t>(c)].size());
    std::vector<int> idx(static_cast<size_t>(n));
    for (const auto& [zs, v] : raw[static_cast<size_t>(c)]) {
      for (int k = 0; k < n; ++k) idx[static_cast<size_t>(k)] = node_index(zs[static_cast<size_t>(k)]);
      table.push_back({pack_key(idx), v});
    }
    std::sort(table.begin(), table.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (size_t i = 0; i + 1 < table.size(); ++i)
      if (table[i].first == table[i + 1].first)
        throw std::runtime_error("load_initial_data: duplicate grid row");
  }

  return InitialData(std::make_shared<GridImpl>(n, m, r, std::move(nodes), std::move(values)));
}

}  // namespace mtdirac

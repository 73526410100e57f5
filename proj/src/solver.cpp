#include "mtdirac/solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace mtdirac {

namespace {

constexpr int kMaxParticles = 12;

struct Buf {
  std::array<double, kMaxParticles> c;
  std::array<int, kMaxParticles> spins;
  std::array<long long, kMaxParticles> coeff;
};

}  // namespace

WaveFunction::WaveFunction(ModelParams params, InitialData data, Engine engine)
    : params_(std::move(params)), data_(std::move(data)), engine_(engine) {
  if (!data_.valid()) throw std::invalid_argument("WaveFunction: empty initial data");
  if (data_.n() != params_.n())
    throw std::invalid_argument("WaveFunction: data/params particle count mismatch");
  if (params_.n() > kMaxParticles)
    throw std::invalid_argument("WaveFunction: particle count too large");
}

WaveFunction WaveFunction::with_engine(Engine e) const {
  WaveFunction copy = *this;
  copy.engine_ = e;
  return copy;
}

complex WaveFunction::closed_form(const Configuration& cfg, int index0) const {
  const int n = params_.n();
  Buf b;
  for (int k = 0; k < n; ++k)
    b.c[static_cast<size_t>(k)] =
        cfg[k].z + sign_of_component(index0, n, k) * cfg[k].t;

  // Stable sort of the characteristic values; tied values keep particle
  // order, realizing the minimal-collision continuation.
  std::array<int, kMaxParticles> order;
  std::iota(order.begin(), order.begin() + n, 0);
  std::stable_sort(order.begin(), order.begin() + n,
                   [&b](int x, int y) { return b.c[static_cast<size_t>(x)] < b.c[static_cast<size_t>(y)]; });

  // Phase ledger: undo adjacent collisions of the sorting permutation, left
  // to right, accumulating exact integer multiples of the boundary phases.
  std::array<int, kMaxParticles> pos;
  for (int j = 0; j < n; ++j) pos[static_cast<size_t>(order[static_cast<size_t>(j)])] = j;
  for (int k = 0; k < n; ++k)
    b.spins[static_cast<size_t>(k)] = sign_of_component(index0, n, k);
  b.coeff.fill(0);

  bool any_phase = false;
  for (;;) {
    int v = -1;
    for (int k = 0; k + 1 < n; ++k) {
      if (pos[static_cast<size_t>(k + 1)] < pos[static_cast<size_t>(k)]) {
        v = k;
        break;
      }
    }
    if (v < 0) break;
    b.coeff[static_cast<size_t>(v)] += b.spins[static_cast<size_t>(v)];
    any_phase = true;
    std::swap(b.spins[static_cast<size_t>(v)], b.spins[static_cast<size_t>(v) + 1]);
    std::swap(pos[static_cast<size_t>(v)], pos[static_cast<size_t>(v) + 1]);
  }

  std::array<double, kMaxParticles> args;
  int perm_index = 0;
  for (int j = 0; j < n; ++j) {
    const int src = order[static_cast<size_t>(j)];
    args[static_cast<size_t>(j)] = b.c[static_cast<size_t>(src)];
    perm_index = (perm_index << 1) | ((index0 >> (n - 1 - src)) & 1);
  }

  complex val = data_.component(perm_index, std::span<const double>(args.data(), static_cast<size_t>(n)));
  if (any_phase) {
    double angle = 0.0;
    for (int k = 0; k + 1 < n; ++k)
      angle += static_cast<double>(b.coeff[static_cast<size_t>(k)]) * params_.phase(k);
    if (angle != 0.0) val *= std::polar(1.0, angle);
  }
  return val;
}

complex WaveFunction::traced(const Configuration& cfg, int index0) const {
  const int n = params_.n();
  Buf b;
  for (int k = 0; k < n; ++k) {
    b.spins[static_cast<size_t>(k)] = sign_of_component(index0, n, k);
    b.c[static_cast<size_t>(k)] = cfg[k].z + b.spins[static_cast<size_t>(k)] * cfg[k].t;
  }
  b.coeff.fill(0);

  // Walk back through collisions: whenever adjacent particles' characteristic
  // values are inverted, the two lines meet at a coincidence point; apply the
  // boundary phase there, exchange the labels and continue toward the initial
  // surface. Rightmost-first, so the decomposition order differs from the
  // closed form's.
  bool any_phase = false;
  for (;;) {
    int k = -1;
    for (int j = n - 2; j >= 0; --j) {
      if (b.c[static_cast<size_t>(j)] > b.c[static_cast<size_t>(j) + 1]) {
        k = j;
        break;
      }
    }
    if (k < 0) break;
    b.coeff[static_cast<size_t>(k)] += b.spins[static_cast<size_t>(k)];
    any_phase = true;
    std::swap(b.c[static_cast<size_t>(k)], b.c[static_cast<size_t>(k) + 1]);
    std::swap(b.spins[static_cast<size_t>(k)], b.spins[static_cast<size_t>(k) + 1]);
  }

  int final_index = 0;
  for (int k = 0; k < n; ++k)
    final_index = (final_index << 1) | (b.spins[static_cast<size_t>(k)] > 0 ? 1 : 0);
  complex val =
      data_.component(final_index, std::span<const double>(b.c.data(), static_cast<size_t>(n)));
  if (any_phase) {
    double angle = 0.0;
    for (int k = 0; k + 1 < n; ++k)
      angle += static_cast<double>(b.coeff[static_cast<size_t>(k)]) * params_.phase(k);
    if (angle != 0.0) val *= std::polar(1.0, angle);
  }
  return val;
}

complex WaveFunction::evaluate_ordered(const Configuration& cfg, int index0) const {
  return engine_ == Engine::ClosedForm ? closed_form(cfg, index0) : traced(cfg, index0);
}

complex WaveFunction::evaluate(const Configuration& cfg, const SpinIndex& s,
                               double classify_tol) const {
  if (cfg.n() != n() || s.n() != n())
    throw std::invalid_argument("evaluate: size mismatch");
  const Classification cls = classify(cfg, classify_tol);
  if (!cls.evaluable())
    throw DomainError("evaluate: configuration is " + to_string(cls.kind));
  return evaluate_ordered(cfg, component_index(s) - 1);
}

namespace {

// Sorting permutation of the events by z (stable) plus its parity sign.
struct SectorSort {
  std::array<int, kMaxParticles> order;
  int sign = 1;
  bool already_sorted = true;
};

SectorSort sector_sort(const Configuration& cfg) {
  const int n = cfg.n();
  SectorSort s;
  std::iota(s.order.begin(), s.order.begin() + n, 0);
  std::stable_sort(s.order.begin(), s.order.begin() + n,
                   [&cfg](int a, int b) { return cfg[a].z < cfg[b].z; });
  int inv = 0;
  for (int a = 0; a < n; ++a)
    for (int bq = a + 1; bq < n; ++bq)
      if (s.order[static_cast<size_t>(a)] > s.order[static_cast<size_t>(bq)]) ++inv;
  s.sign = inv % 2 == 0 ? +1 : -1;
  s.already_sorted = inv == 0;
  return s;
}

Configuration apply_order(const Configuration& cfg, const SectorSort& s) {
  std::vector<Event> ev(static_cast<size_t>(cfg.n()));
  for (int j = 0; j < cfg.n(); ++j) ev[static_cast<size_t>(j)] = cfg[s.order[static_cast<size_t>(j)]];
  return Configuration(std::move(ev));
}

int permute_component_bits(int index0, int n, const SectorSort& s) {
  int out = 0;
  for (int j = 0; j < n; ++j)
    out = (out << 1) | ((index0 >> (n - 1 - s.order[static_cast<size_t>(j)])) & 1);
  return out;
}

}  // namespace

complex WaveFunction::evaluate_full(const Configuration& cfg, const SpinIndex& s,
                                    double classify_tol) const {
  if (cfg.n() != n() || s.n() != n())
    throw std::invalid_argument("evaluate_full: size mismatch");
  const Classification cls = classify(cfg, classify_tol);
  if (cls.kind == DomainClass::NotSpacelike)
    throw DomainError("evaluate_full: configuration is NotSpacelike");
  if (cls.evaluable()) return evaluate_ordered(cfg, component_index(s) - 1);

  const SectorSort srt = sector_sort(cfg);
  const Configuration sorted = apply_order(cfg, srt);
  const complex val = evaluate_ordered(sorted, permute_component_bits(component_index(s) - 1, n(), srt));
  return srt.sign > 0 ? val : -val;
}

void WaveFunction::evaluate_all_full(const Configuration& cfg, std::span<complex> out,
                                     double classify_tol) const {
  const int nc = n_components();
  if (static_cast<int>(out.size()) < nc)
    throw std::invalid_argument("evaluate_all_full: output span too small");
  const Classification cls = classify(cfg, classify_tol);
  if (cls.kind == DomainClass::NotSpacelike)
    throw DomainError("evaluate_all_full: configuration is NotSpacelike");

  if (cls.evaluable()) {
    for (int i = 0; i < nc; ++i) out[static_cast<size_t>(i)] = evaluate_ordered(cfg, i);
    return;
  }
  const SectorSort srt = sector_sort(cfg);
  const Configuration sorted = apply_order(cfg, srt);
  for (int i = 0; i < nc; ++i) {
    const complex val = evaluate_ordered(sorted, permute_component_bits(i, n(), srt));
    out[static_cast<size_t>(i)] = srt.sign > 0 ? val : -val;
  }
}

double WaveFunction::residual(const Configuration& cfg, const SpinIndex& s, double h) const {
  const int n = params_.n();
  if (h <= 0.0) h = 1e-4 * (1.0 + cfg.max_abs_coordinate());
  const Classification cls = classify(cfg);
  if (cls.kind != DomainClass::Interior)
    throw DomainError("residual: configuration must be interior");

  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      const double margin =
          std::abs(cfg[k].z - cfg[j].z) - std::abs(cfg[k].t - cfg[j].t);
      if (margin <= 4.0 * h)
        throw DomainError("residual: stencil too close to the light cone");
    }
  }
  const CharacteristicValues cv = characteristic_values(cfg, s);
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k)
      if (std::abs(cv[j] - cv[k]) <= 4.0 * h)
        throw DomainError("residual: stencil too close to a characteristic-value tie");

  const int index0 = component_index(s) - 1;
  double worst = 0.0;
  for (int k = 0; k < n; ++k) {
    Configuration pert = cfg;
    pert.events[static_cast<size_t>(k)].t = cfg[k].t + h;
    const complex tp = evaluate_ordered(pert, index0);
    pert.events[static_cast<size_t>(k)].t = cfg[k].t - h;
    const complex tm = evaluate_ordered(pert, index0);
    pert.events[static_cast<size_t>(k)].t = cfg[k].t;
    pert.events[static_cast<size_t>(k)].z = cfg[k].z + h;
    const complex zp = evaluate_ordered(pert, index0);
    pert.events[static_cast<size_t>(k)].z = cfg[k].z - h;
    const complex zm = evaluate_ordered(pert, index0);
    const complex dt = (tp - tm) / (2.0 * h);
    const complex dz = (zp - zm) / (2.0 * h);
    worst = std::max(worst, std::abs(dt - static_cast<double>(s.sign(k)) * dz));
  }
  return worst;
}

std::pair<complex, complex> WaveFunction::boundary_pair(const Configuration& cfg,
                                                        const SpinIndex& s) const {
  const Classification cls = classify(cfg);
  if (cls.kind != DomainClass::BoundaryStratum)
    throw DomainError("boundary_pair: configuration is not on a coincidence stratum");
  const int k = cls.stratum;
  if (s.sign(k) != +1 || s.sign(k + 1) != -1)
    throw std::invalid_argument("boundary_pair: spin tuple must carry (+,-) at the stratum");
  const int index0 = component_index(s) - 1;
  const int swapped0 = component_index(s.with_adjacent_swapped(k)) - 1;
  const complex lhs = evaluate_ordered(cfg, index0);
  const complex rhs = std::polar(1.0, params_.phase(k)) * evaluate_ordered(cfg, swapped0);
  return {lhs, rhs};
}

double WaveFunction::boundary_violation(const Configuration& cfg) const {
  const Classification cls = classify(cfg);
  if (cls.kind != DomainClass::BoundaryStratum)
    throw DomainError("boundary_violation: configuration is not on a coincidence stratum");
  const int k = cls.stratum;
  const int n = params_.n();
  double worst = 0.0;
  for (int i = 0; i < n_components(); ++i) {
    if (sign_of_component(i, n, k) != +1 || sign_of_component(i, n, k + 1) != -1) continue;
    const auto pair = boundary_pair(cfg, spin_of_index(i + 1, n));
    worst = std::max(worst, std::abs(pair.first - pair.second));
  }
  return worst;
}

}  // namespace mtdirac

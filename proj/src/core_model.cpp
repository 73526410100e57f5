#include "mtdirac/core_model.hpp"

#include <algorithm>
#include <cmath>

namespace mtdirac {

SpinIndex::SpinIndex(std::vector<int> signs) : signs_(std::move(signs)) {
  for (int s : signs_) {
    if (s != -1 && s != +1) throw std::invalid_argument("SpinIndex: signs must be -1 or +1");
  }
}

SpinIndex SpinIndex::parse(std::string_view pattern) {
  std::vector<int> signs;
  signs.reserve(pattern.size());
  for (char ch : pattern) {
    if (ch == '+') signs.push_back(+1);
    else if (ch == '-') signs.push_back(-1);
    else throw std::invalid_argument("SpinIndex: pattern must consist of '+'/'-'");
  }
  return SpinIndex(std::move(signs));
}

SpinIndex SpinIndex::uniform(int n, int sign) {
  return SpinIndex(std::vector<int>(static_cast<size_t>(n), sign));
}

SpinIndex SpinIndex::with_adjacent_swapped(int k) const {
  std::vector<int> s = signs_;
  std::swap(s[static_cast<size_t>(k)], s[static_cast<size_t>(k) + 1]);
  return SpinIndex(std::move(s));
}

std::string SpinIndex::str() const {
  std::string out;
  out.reserve(signs_.size());
  for (int s : signs_) out.push_back(s > 0 ? '+' : '-');
  return out;
}

Configuration Configuration::equal_time(double t, std::span<const double> zs) {
  std::vector<Event> ev(zs.size());
  for (size_t k = 0; k < zs.size(); ++k) ev[k] = Event{t, zs[k]};
  return Configuration(std::move(ev));
}

double Configuration::max_abs_coordinate() const {
  double m = 0.0;
  for (const Event& e : events) m = std::max({m, std::abs(e.t), std::abs(e.z)});
  return m;
}

std::string to_string(DomainClass c) {
  switch (c) {
    case DomainClass::Interior: return "Interior";
    case DomainClass::BoundaryStratum: return "BoundaryStratum";
    case DomainClass::OutsideOrderedDomain: return "OutsideOrderedDomain";
    case DomainClass::NotSpacelike: return "NotSpacelike";
  }
  return "Unknown";
}

ModelParams::ModelParams(int n_particles, std::vector<double> phases, int smoothness)
    : n_(n_particles), phases_(std::move(phases)), smoothness_(smoothness) {
  if (n_ < 2) throw std::invalid_argument("ModelParams: n_particles must be >= 2");
  if (static_cast<int>(phases_.size()) != n_ - 1)
    throw std::invalid_argument("ModelParams: need n_particles-1 boundary phases");
  if (smoothness_ < 1) throw std::invalid_argument("ModelParams: smoothness must be >= 1");
  constexpr double pi = 3.14159265358979323846;
  for (double phi : phases_) {
    if (!(phi > -pi - 1e-15 && phi <= pi + 1e-15))
      throw std::invalid_argument("ModelParams: phases must lie in (-pi, pi]");
  }
}

ModelParams ModelParams::uniform_phase(int n_particles, double phi, int smoothness) {
  return ModelParams(n_particles, std::vector<double>(static_cast<size_t>(n_particles - 1), phi),
                     smoothness);
}

double reduce_angle(double phi) {
  constexpr double two_pi = 6.28318530717958647692;
  double r = std::remainder(phi, two_pi);
  if (r <= -two_pi / 2) r += two_pi;
  return r;
}

int component_index(const SpinIndex& s) {
  int idx = 0;
  for (int k = 0; k < s.n(); ++k) idx = (idx << 1) | (s.sign(k) > 0 ? 1 : 0);
  return idx + 1;
}

SpinIndex spin_of_index(int index, int n) {
  if (index < 1 || index > (1 << n)) throw std::invalid_argument("spin_of_index: index out of range");
  std::vector<int> signs(static_cast<size_t>(n));
  int bits = index - 1;
  for (int k = 0; k < n; ++k) signs[static_cast<size_t>(k)] = ((bits >> (n - 1 - k)) & 1) ? +1 : -1;
  return SpinIndex(std::move(signs));
}

Classification classify(const Configuration& cfg, double tol) {
  if (tol < 0) throw std::invalid_argument("classify: tol must be >= 0");
  const int n = cfg.n();
  // Pairwise light-cone test; coincident pairs are allowed (they carry the
  // boundary condition), anything else on or inside the cone is fatal.
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      const double dt = cfg[k].t - cfg[j].t;
      const double dz = cfg[k].z - cfg[j].z;
      const bool coincident = std::abs(dt) <= tol && std::abs(dz) <= tol;
      if (coincident) continue;
      if (dt * dt - dz * dz >= -tol) return {DomainClass::NotSpacelike, -1};
    }
  }
  // z-ordering: any strict descent leaves the ordered sector.
  for (int k = 0; k + 1 < n; ++k) {
    if (cfg[k].z - cfg[k + 1].z > tol) return {DomainClass::OutsideOrderedDomain, -1};
  }
  for (int k = 0; k + 1 < n; ++k) {
    const double dt = cfg[k + 1].t - cfg[k].t;
    const double dz = cfg[k + 1].z - cfg[k].z;
    if (std::abs(dt) <= tol && std::abs(dz) <= tol) return {DomainClass::BoundaryStratum, k};
  }
  return {DomainClass::Interior, -1};
}

CharacteristicValues characteristic_values(const Configuration& cfg, const SpinIndex& s) {
  const int n = cfg.n();
  CharacteristicValues cv;
  cv.c.resize(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k)
    cv.c[static_cast<size_t>(k)] = cfg[k].z + s.sign(k) * cfg[k].t;
  return cv;
}

}  // namespace mtdirac

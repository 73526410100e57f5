#pragma once
// Core domain types for the N-particle multi-time Dirac model in 1+1
// dimensions. Units are dimensionless with c = 1; an event is (t, z).
// All types are immutable after construction and safe for concurrent use.

#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mtdirac {

using complex = std::complex<double>;

inline constexpr double kDefaultClassifyTol = 1e-12;

// Thrown when an evaluation is requested outside the set of space-like
// configurations (or outside the ordered sector, for sector-local calls).
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when a hypersurface is not space-like at a quadrature node.
struct SlopeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when a sampling grid truncates the support it must cover.
struct GridError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when neither root branch of the minimal-distance construction
// satisfies the defining constraints.
struct NoRootError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Event {
  double t = 0.0;
  double z = 0.0;
};

// One of the 2^N spin components, an ordered tuple of signs in {-1,+1}.
class SpinIndex {
 public:
  SpinIndex() = default;
  explicit SpinIndex(std::vector<int> signs);
  // Convenience: "+-+" -> (+1,-1,+1).
  static SpinIndex parse(std::string_view pattern);
  static SpinIndex uniform(int n, int sign);

  int n() const { return static_cast<int>(signs_.size()); }
  int sign(int k) const { return signs_[static_cast<size_t>(k)]; }
  const std::vector<int>& signs() const { return signs_; }
  SpinIndex with_adjacent_swapped(int k) const;
  std::string str() const;

  bool operator==(const SpinIndex&) const = default;

 private:
  std::vector<int> signs_;
};

// N space-time events, one per particle.
struct Configuration {
  std::vector<Event> events;

  Configuration() = default;
  explicit Configuration(std::vector<Event> ev) : events(std::move(ev)) {}
  static Configuration equal_time(double t, std::span<const double> zs);

  int n() const { return static_cast<int>(events.size()); }
  const Event& operator[](int k) const { return events[static_cast<size_t>(k)]; }
  double max_abs_coordinate() const;
};

enum class DomainClass {
  Interior,              // pairwise strictly space-like, z strictly ascending
  BoundaryStratum,       // adjacent coincidence, all other pairs space-like
  OutsideOrderedDomain,  // space-like but z-ordering violated
  NotSpacelike,          // some pair time-like or light-like beyond tolerance
};

struct Classification {
  DomainClass kind = DomainClass::NotSpacelike;
  // For BoundaryStratum: smallest k (0-based) with events k and k+1 coincident.
  int stratum = -1;

  bool evaluable() const {
    return kind == DomainClass::Interior || kind == DomainClass::BoundaryStratum;
  }
};

std::string to_string(DomainClass c);

// Particle count, boundary phases and declared data smoothness.
class ModelParams {
 public:
  // phases has n_particles-1 entries, each in (-pi, pi]; phases[k] couples
  // particles k and k+1 (0-based).
  ModelParams(int n_particles, std::vector<double> phases, int smoothness = 4);
  static ModelParams uniform_phase(int n_particles, double phi, int smoothness = 4);

  int n() const { return n_; }
  int smoothness() const { return smoothness_; }
  double phase(int k) const { return phases_[static_cast<size_t>(k)]; }
  const std::vector<double>& phases() const { return phases_; }
  int n_components() const { return 1 << n_; }

 private:
  int n_ = 2;
  std::vector<double> phases_;
  int smoothness_ = 4;
};

// c_k = z_k + s_k t_k, the conserved coordinate of particle k along the
// light-like line carrying a fixed spin component.
struct CharacteristicValues {
  std::vector<double> c;

  int n() const { return static_cast<int>(c.size()); }
  double operator[](int k) const { return c[static_cast<size_t>(k)]; }
};

// Reduce an angle to (-pi, pi].
double reduce_angle(double phi);

}  // namespace mtdirac

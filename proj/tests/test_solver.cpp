#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "mtdirac/solver.hpp"
#include "test_helpers.hpp"

using namespace mtdirac;

namespace {

constexpr double kPi = 3.14159265358979323846;

WaveFunction make_psi3(bool modulated = true) {
  const ModelParams params(3, {0.7, -1.9}, 5);
  return verify::standard_wavefunction(params, modulated);
}

}  // namespace

TEST_CASE("initial values are reproduced exactly on the ordered sector") {
  const WaveFunction psi = make_psi3();
  std::mt19937_64 rng(31);
  for (int i = 0; i < 300; ++i) {
    std::vector<double> zs(3);
    for (double& z : zs) z = testing::dyadic(rng, 4.0);
    std::sort(zs.begin(), zs.end());
    if (zs[1] - zs[0] < 1e-3 || zs[2] - zs[1] < 1e-3) continue;
    const Configuration cfg = Configuration::equal_time(0.0, zs);
    for (int idx = 0; idx < 8; ++idx) {
      const SpinIndex s = spin_of_index(idx + 1, 3);
      const complex direct = psi.data().component(s, zs);
      const complex value = psi.evaluate(cfg, s);
      CHECK(value.real() == direct.real());
      CHECK(value.imag() == direct.imag());
    }
  }
}

TEST_CASE("three-particle worked structure") {
  const WaveFunction psi = make_psi3();
  const complex phase1 = std::polar(1.0, psi.params().phase(0));
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const SpinIndex ppp = SpinIndex::parse("+++");
  const SpinIndex pmp = SpinIndex::parse("+-+");
  const SpinIndex mpp = SpinIndex::parse("-++");

  int collided = 0;
  for (int i = 0; i < 400; ++i) {
    const Configuration cfg = verify::random_interior_configuration(3, 4.5, 1.2, rng);
    // all-plus never collides: plain transport to the initial surface
    const CharacteristicValues cp = characteristic_values(cfg, ppp);
    CHECK(std::abs(psi.evaluate(cfg, ppp) - psi.data().component(ppp, cp.c)) <= 1e-15);

    // engineered first-pair collision for the +-+ component
    const double z1 = -3.0 + 4.0 * u01(rng);
    const double g12 = 0.2 + 0.8 * u01(rng);
    const double g23 = 0.3 + 1.2 * u01(rng);
    const double t = 0.5 * g12 + 0.05 + u01(rng);
    const double zs[3] = {z1, z1 + g12, z1 + g12 + g23};
    const Configuration ccfg = Configuration::equal_time(t, zs);
    const CharacteristicValues cv = characteristic_values(ccfg, pmp);
    if (cv[1] < cv[0] && cv[0] < cv[2]) {
      ++collided;
      const double args[3] = {cv[1], cv[0], cv[2]};
      const complex expected = phase1 * psi.data().component(mpp, args);
      CHECK(std::abs(psi.evaluate(ccfg, pmp) - expected) <= 1e-14);
    }
  }
  CHECK(collided > 100);
}

TEST_CASE("closed form agrees with the characteristic-tracing engine") {
  const WaveFunction psi = make_psi3();
  const WaveFunction traced = psi.with_engine(Engine::Traced);
  CHECK(traced.engine() == Engine::Traced);
  std::mt19937_64 rng(33);
  double worst = 0.0;
  for (int i = 0; i < 2000; ++i) {
    const Configuration cfg = verify::random_interior_configuration(3, 4.5, 1.2, rng);
    const SpinIndex s = testing::random_spin(3, rng);
    worst = std::max(worst, std::abs(psi.evaluate(cfg, s) - traced.evaluate(cfg, s)));
  }
  CHECK(worst <= 1e-13);
}

TEST_CASE("antisymmetric continuation") {
  const WaveFunction psi = make_psi3();
  std::mt19937_64 rng(34);

  SUBCASE("ordered configurations reduce to the sector evaluation") {
    for (int i = 0; i < 100; ++i) {
      const Configuration cfg = verify::random_interior_configuration(3, 4.0, 1.1, rng);
      const SpinIndex s = testing::random_spin(3, rng);
      const complex a = psi.evaluate(cfg, s);
      const complex b = psi.evaluate_full(cfg, s);
      CHECK(a.real() == b.real());
      CHECK(a.imag() == b.imag());
    }
  }
  SUBCASE("pair swap negates with swapped spins") {
    const ModelParams params(2, {1.1}, 5);
    const WaveFunction psi2 = verify::standard_wavefunction(params, true);
    for (int i = 0; i < 200; ++i) {
      const Configuration cfg = verify::random_interior_configuration(2, 3.0, 1.0, rng);
      const SpinIndex s = testing::random_spin(2, rng);
      const Configuration swapped({cfg[1], cfg[0]});
      const complex lhs = psi2.evaluate_full(swapped, s.with_adjacent_swapped(0));
      const complex rhs = -psi2.evaluate_full(cfg, s);
      CHECK(lhs.real() == rhs.real());
      CHECK(lhs.imag() == rhs.imag());
    }
  }
  SUBCASE("random sector against the explicit relabeling relation") {
    for (int i = 0; i < 400; ++i) {
      const Configuration cfg = verify::random_interior_configuration(3, 4.0, 1.1, rng);
      const SpinIndex s = testing::random_spin(3, rng);
      std::vector<int> perm = {0, 1, 2};
      std::shuffle(perm.begin(), perm.end(), rng);
      int inv = 0;
      std::vector<Event> ev(3);
      std::vector<int> signs(3);
      for (int j = 0; j < 3; ++j) {
        ev[static_cast<size_t>(j)] = cfg[perm[static_cast<size_t>(j)]];
        signs[static_cast<size_t>(j)] = s.sign(perm[static_cast<size_t>(j)]);
        for (int l = j + 1; l < 3; ++l)
          if (perm[static_cast<size_t>(j)] > perm[static_cast<size_t>(l)]) ++inv;
      }
      const complex base = psi.evaluate_full(cfg, s);
      const complex permuted = psi.evaluate_full(Configuration(ev), SpinIndex(signs));
      const complex expected = inv % 2 == 0 ? base : -base;
      CHECK(permuted.real() == expected.real());
      CHECK(permuted.imag() == expected.imag());
    }
  }
}

TEST_CASE("components are constant along their characteristics") {
  const WaveFunction psi = make_psi3();
  std::mt19937_64 rng(35);
  int verified = 0;
  for (int i = 0; i < 500 && verified < 200; ++i) {
    // dyadic lattice keeps the shifted characteristic values bitwise equal
    std::vector<Event> ev(3);
    ev[0] = {testing::dyadic(rng, 1.0), testing::dyadic(rng, 1.5) - 3.0};
    ev[1] = {testing::dyadic(rng, 1.0), testing::dyadic(rng, 1.5)};
    ev[2] = {testing::dyadic(rng, 1.0), testing::dyadic(rng, 1.5) + 3.0};
    const Configuration cfg(ev);
    if (classify(cfg).kind != DomainClass::Interior) continue;
    const SpinIndex s = testing::random_spin(3, rng);

    std::vector<Event> shifted = ev;
    for (int k = 0; k < 3; ++k) {
      const double d = testing::dyadic(rng, 0.25);
      shifted[static_cast<size_t>(k)].t += d;
      shifted[static_cast<size_t>(k)].z -= s.sign(k) * d;
    }
    const Configuration cfg2(shifted);
    if (classify(cfg2).kind != DomainClass::Interior) continue;
    // the shift must not cross a collision: require the same sorting
    const Permutation p1 = sort_permutation(characteristic_values(cfg, s));
    const Permutation p2 = sort_permutation(characteristic_values(cfg2, s));
    if (!(p1 == p2)) continue;

    ++verified;
    const complex a = psi.evaluate(cfg, s);
    const complex b = psi.evaluate(cfg2, s);
    CHECK(a.real() == b.real());
    CHECK(a.imag() == b.imag());
  }
  CHECK(verified >= 200);
}

TEST_CASE("finite-difference residual") {
  SUBCASE("constant data transports exactly") {
    std::vector<InitialData::ComponentFn> comps(8);
    for (auto& f : comps)
      f = [](std::span<const double>) { return complex(0.7, -0.2); };
    const InitialData data = InitialData::from_callables(3, 3, 50.0, std::move(comps), true);
    const WaveFunction psi(ModelParams(3, {0.4, 0.9}, 3), data);
    std::mt19937_64 rng(36);
    for (int i = 0; i < 50; ++i) {
      const Configuration cfg = verify::random_interior_configuration(3, 4.0, 1.0, rng);
      const SpinIndex s = testing::random_spin(3, rng);
      try {
        CHECK(psi.residual(cfg, s, 1e-3) == 0.0);
      } catch (const DomainError&) {
      }
    }
  }
  SUBCASE("smooth data stays at the rounding floor") {
    const WaveFunction psi = make_psi3();
    std::mt19937_64 rng(37);
    double worst = 0.0;
    int measured = 0;
    while (measured < 40) {
      const Configuration cfg = verify::random_interior_configuration(3, 4.0, 1.0, rng);
      const SpinIndex s = testing::random_spin(3, rng);
      try {
        const double r = psi.residual(cfg, s, 1e-3);
        worst = std::max(worst, r);
        ++measured;
      } catch (const DomainError&) {
      }
    }
    CHECK(worst <= 1e-10);
  }
  SUBCASE("stencil margins are enforced") {
    const WaveFunction psi = make_psi3();
    // nearly light-like pair
    const Configuration tight({{0.0, 0.0}, {0.95, 1.0}, {0.0, 3.0}});
    CHECK_THROWS_AS(psi.residual(tight, SpinIndex::parse("+++"), 0.05), DomainError);
    // characteristic-value tie for the mixed component
    const Configuration tie = Configuration::equal_time(0.5, std::vector<double>{-0.5, 0.5, 3.0});
    // c(+,-,.) = (0, 0, .) ties at the first pair
    CHECK_THROWS_AS(psi.residual(tie, SpinIndex::parse("+-+"), 1e-3), DomainError);
  }
}

TEST_CASE("boundary pairs agree for compatible data") {
  const ModelParams params(2, {kPi / 2}, 5);
  const WaveFunction psi(params, reflect_family(params, 3.0));
  std::mt19937_64 rng(38);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const Configuration cfg =
        verify::random_stratum_configuration(2, 0, 2.2, 1.0, i % 2 == 0, rng);
    const auto [lhs, rhs] = psi.boundary_pair(cfg, SpinIndex::parse("+-"));
    worst = std::max(worst, std::abs(lhs - rhs));
    worst = std::max(worst, psi.boundary_violation(cfg));
  }
  CHECK(worst <= 1e-10);

  SUBCASE("equal adjacent signs are rejected") {
    const Configuration cfg = verify::random_stratum_configuration(2, 0, 2.2, 1.0, false, rng);
    CHECK_THROWS_AS(psi.boundary_pair(cfg, SpinIndex::parse("++")), std::invalid_argument);
  }
}

TEST_CASE("free phase reduces the boundary condition to continuity") {
  // Overlapping pure-chirality pair: nonzero stratum values, admissible only
  // at the free phase, where the mixed components must be continuous.
  Packet right;
  right.center = 0.4;
  right.width = 1.6;
  right.order = 5;
  right.amp_plus = std::polar(0.9, 0.3);
  Packet left;
  left.center = -0.4;
  left.width = 1.8;
  left.order = 5;
  left.amp_minus = std::polar(1.1, -0.5);
  const ModelParams params(2, {kPi}, 5);
  const WaveFunction psi(params, ProductFamily(right, left).to_initial_data());

  std::mt19937_64 rng(40);
  double worst = 0.0;
  double biggest_value = 0.0;
  for (int i = 0; i < 200; ++i) {
    const Configuration cfg =
        verify::random_stratum_configuration(2, 0, 1.5, 0.8, i % 2 == 0, rng);
    const auto [lhs, rhs] = psi.boundary_pair(cfg, SpinIndex::parse("+-"));
    worst = std::max(worst, std::abs(lhs - rhs));
    biggest_value = std::max(biggest_value, std::abs(lhs));
  }
  CHECK(worst <= 1e-12);
  CHECK(biggest_value > 1e-3);  // the check is non-vacuous
}

TEST_CASE("domain errors") {
  const WaveFunction psi = make_psi3();
  const Configuration timelike({{0.0, 0.0}, {2.0, 0.5}, {0.0, 5.0}});
  CHECK_THROWS_AS(psi.evaluate(timelike, SpinIndex::parse("+++")), DomainError);
  CHECK_THROWS_AS(psi.evaluate_full(timelike, SpinIndex::parse("+++")), DomainError);

  const Configuration unordered({{0.0, 2.0}, {0.0, 0.0}, {0.0, 5.0}});
  CHECK_THROWS_AS(psi.evaluate(unordered, SpinIndex::parse("+++")), DomainError);
  CHECK_NOTHROW(psi.evaluate_full(unordered, SpinIndex::parse("+++")));
}

TEST_CASE("tabulated data evaluates through the same solver path") {
  namespace fs = std::filesystem;
  const ModelParams params(2, {1.3}, 4);
  const WaveFunction psi = verify::standard_wavefunction(params, false);
  const fs::path dir = fs::temp_directory_path() / "mtdirac_test_solver";
  fs::create_directories(dir);
  const std::string path = (dir / "grid.txt").string();
  save_initial_data(psi.data(), path, 61);
  const WaveFunction loaded(params, load_initial_data(path));

  std::mt19937_64 rng(39);
  double worst = 0.0;
  for (int i = 0; i < 300; ++i) {
    const Configuration cfg = verify::random_interior_configuration(2, 3.0, 1.0, rng);
    const SpinIndex s = testing::random_spin(2, rng);
    worst = std::max(worst, std::abs(psi.evaluate(cfg, s) - loaded.evaluate(cfg, s)));
  }
  CHECK(worst < 2e-4);  // 61-node tensor grid, local degree-4 stencils
}

TEST_CASE("boundary strata evaluate through the tie-break continuation") {
  const ModelParams params(2, {kPi / 2}, 5);
  const WaveFunction psi(params, reflect_family(params, 3.0));
  // at a zero-time coincidence the mixed components reduce to the data
  const Configuration cfg = Configuration::equal_time(0.0, std::vector<double>{0.4, 0.4});
  const double z[2] = {0.4, 0.4};
  CHECK(std::abs(psi.evaluate(cfg, SpinIndex::parse("+-")) -
                 psi.data().component(SpinIndex::parse("+-"), z)) <= 1e-15);
}

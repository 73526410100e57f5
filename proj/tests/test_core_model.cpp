#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mtdirac/core_model.hpp"
#include "test_helpers.hpp"

using namespace mtdirac;

TEST_CASE("component index follows the binary ordering") {
  CHECK(component_index(SpinIndex::parse("--")) == 1);
  CHECK(component_index(SpinIndex::parse("-+")) == 2);
  CHECK(component_index(SpinIndex::parse("+-")) == 3);
  CHECK(component_index(SpinIndex::parse("++")) == 4);

  CHECK(component_index(SpinIndex::uniform(5, -1)) == 1);
  CHECK(component_index(SpinIndex::parse("----+")) == 2);
  CHECK(component_index(SpinIndex::uniform(5, +1)) == 32);
}

TEST_CASE("component index and spin tuple are mutually recoverable up to N=10") {
  for (int n = 1; n <= 10; ++n) {
    for (int i = 1; i <= (1 << n); ++i) {
      const SpinIndex s = spin_of_index(i, n);
      CHECK(s.n() == n);
      CHECK(component_index(s) == i);
    }
  }
}

TEST_CASE("classification of the named examples") {
  const Configuration interior({{0.0, 0.0}, {0.0, 1.0}});
  CHECK(classify(interior).kind == DomainClass::Interior);

  const Configuration coincident({{0.0, 0.0}, {0.0, 0.0}});
  const Classification cls = classify(coincident);
  CHECK(cls.kind == DomainClass::BoundaryStratum);
  CHECK(cls.stratum == 0);

  const Configuration timelike({{0.0, 0.0}, {1.0, 0.5}});
  CHECK(classify(timelike).kind == DomainClass::NotSpacelike);

  const Configuration lightlike({{0.0, 0.0}, {1.0, 1.0}});
  CHECK(classify(lightlike).kind == DomainClass::NotSpacelike);

  const Configuration unordered({{0.0, 1.0}, {0.0, 0.0}});
  CHECK(classify(unordered).kind == DomainClass::OutsideOrderedDomain);
}

TEST_CASE("classification is invariant under a global time shift") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const int n = 2 + static_cast<int>(rng() % 3);
    Configuration cfg = verify::random_interior_configuration(n, 3.0, 1.0, rng);
    const Classification before = classify(cfg);
    const double shift = testing::dyadic(rng, 5.0);
    for (Event& e : cfg.events) e.t += shift;
    const Classification after = classify(cfg);
    CHECK(after.kind == before.kind);
  }
}

TEST_CASE("permuting an interior configuration leaves the ordered sector") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 100; ++i) {
    const Configuration cfg = verify::random_interior_configuration(3, 3.0, 1.0, rng);
    std::vector<int> perm = {0, 1, 2};
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Event> ev(3);
    for (int j = 0; j < 3; ++j) ev[static_cast<size_t>(j)] = cfg[perm[static_cast<size_t>(j)]];
    const Classification cls = classify(Configuration(std::move(ev)));
    const bool is_id = perm[0] == 0 && perm[1] == 1 && perm[2] == 2;
    if (is_id) {
      CHECK(cls.kind == DomainClass::Interior);
    } else {
      CHECK(cls.kind == DomainClass::OutsideOrderedDomain);
    }
  }
}

TEST_CASE("characteristic values") {
  std::mt19937_64 rng(9);
  SUBCASE("at common time zero they are the positions") {
    for (int i = 0; i < 50; ++i) {
      const int n = 2 + static_cast<int>(rng() % 3);
      std::vector<double> zs(static_cast<size_t>(n));
      for (double& z : zs) z = testing::dyadic(rng, 4.0);
      std::sort(zs.begin(), zs.end());
      const Configuration cfg = Configuration::equal_time(0.0, zs);
      const CharacteristicValues c = characteristic_values(cfg, testing::random_spin(n, rng));
      for (int k = 0; k < n; ++k) CHECK(c[k] == zs[static_cast<size_t>(k)]);
    }
  }
  SUBCASE("worked pair values") {
    const Configuration a({{1.0, 2.0}, {0.5, 4.5}});
    const CharacteristicValues ca = characteristic_values(a, SpinIndex::parse("+-"));
    CHECK(ca[0] == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(ca[1] == doctest::Approx(4.0).epsilon(1e-15));

    const Configuration b({{2.0, 1.0}, {3.0, 7.0}});
    const CharacteristicValues cb = characteristic_values(b, SpinIndex::parse("-+"));
    CHECK(cb[0] == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(cb[1] == doctest::Approx(10.0).epsilon(1e-15));
  }
}

TEST_CASE("model parameter validation") {
  CHECK_THROWS_AS(ModelParams(1, {}), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams(2, {}), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams(2, {7.0}), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams(2, {1.0}, 0), std::invalid_argument);
  const ModelParams ok(3, {3.14159265358979323846, -1.0});
  CHECK(ok.n_components() == 8);
}

TEST_CASE("angle reduction lands in the half-open interval") {
  constexpr double pi = 3.14159265358979323846;
  CHECK(reduce_angle(pi) == doctest::Approx(pi));
  CHECK(reduce_angle(-pi) == doctest::Approx(pi));
  CHECK(reduce_angle(3 * pi) == doctest::Approx(pi));
  CHECK(reduce_angle(2 * pi + 0.25) == doctest::Approx(0.25));
  CHECK(reduce_angle(-0.25) == doctest::Approx(-0.25));
}

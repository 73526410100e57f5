#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "mtdirac/initial_data.hpp"
#include "test_helpers.hpp"

using namespace mtdirac;

namespace {

constexpr double kPi = 3.14159265358979323846;

InitialData two_component_data(InitialData::ComponentFn plus_minus,
                               InitialData::ComponentFn minus_plus, double radius, int m = 4) {
  std::vector<InitialData::ComponentFn> comps(4);
  comps[2] = std::move(plus_minus);
  comps[1] = std::move(minus_plus);
  return InitialData::from_callables(2, m, radius, std::move(comps), true);
}

}  // namespace

TEST_CASE("bump profile is compactly supported and positive inside") {
  CHECK(bump(0.0, 4) == 1.0);
  CHECK(bump(1.0, 4) == 0.0);
  CHECK(bump(-1.2, 4) == 0.0);
  CHECK(bump(0.5, 2) == doctest::Approx(std::pow(0.75, 3)));
}

TEST_CASE("wedge data is antisymmetric under simultaneous relabeling") {
  const auto packets = verify::standard_packets(2, 5, true);
  const InitialData data = wedge_family(packets);
  std::mt19937_64 rng(21);
  for (int i = 0; i < 200; ++i) {
    const double z1 = testing::dyadic(rng, 3.0);
    const double z2 = testing::dyadic(rng, 3.0);
    for (int idx = 0; idx < 4; ++idx) {
      const SpinIndex s = spin_of_index(idx + 1, 2);
      const SpinIndex sw = s.with_adjacent_swapped(0);
      const double a[2] = {z1, z2};
      const double b[2] = {z2, z1};
      const complex lhs = data.component(sw, b);
      const complex rhs = -data.component(s, a);
      CHECK(std::abs(lhs - rhs) <= 1e-14);
    }
  }
}

TEST_CASE("antisymmetrize") {
  SUBCASE("wedge of two one-particle spinor profiles, expanded by hand") {
    const auto packets = verify::standard_packets(2, 4, false);
    // raw product u (x) w, defined everywhere
    std::vector<InitialData::ComponentFn> comps(4);
    for (int idx = 0; idx < 4; ++idx) {
      comps[static_cast<size_t>(idx)] = [packets, idx](std::span<const double> z) {
        return packets[0].component(sign_of_component(idx, 2, 0), z[0]) *
               packets[1].component(sign_of_component(idx, 2, 1), z[1]);
      };
    }
    const InitialData raw =
        InitialData::from_callables(2, 4, wedge_family(packets).support_radius(), comps, true);
    const InitialData anti = antisymmetrize(raw);

    std::mt19937_64 rng(22);
    for (int i = 0; i < 200; ++i) {
      const double z[2] = {testing::dyadic(rng, 3.0), testing::dyadic(rng, 3.0)};
      for (int idx = 0; idx < 4; ++idx) {
        const int s0 = sign_of_component(idx, 2, 0);
        const int s1 = sign_of_component(idx, 2, 1);
        const complex expected = 0.5 * (packets[0].component(s0, z[0]) * packets[1].component(s1, z[1]) -
                                        packets[0].component(s1, z[1]) * packets[1].component(s0, z[0]));
        CHECK(std::abs(anti.component(idx, z) - expected) <= 1e-15);
      }
    }
  }
  SUBCASE("idempotence on random data") {
    std::mt19937_64 seed_rng(23);
    std::vector<InitialData::ComponentFn> comps(4);
    for (int idx = 0; idx < 4; ++idx) {
      const double a = 0.3 + 0.1 * idx;
      comps[static_cast<size_t>(idx)] = [a](std::span<const double> z) {
        return complex(a * z[0] * bump(z[0] / 3.0, 3), 0.2 * z[1]) * bump(z[1] / 3.0, 3);
      };
    }
    const InitialData raw = InitialData::from_callables(2, 3, 3.0, comps, true);
    const InitialData once = antisymmetrize(raw);
    const InitialData twice = antisymmetrize(once);
    std::mt19937_64 rng(24);
    for (int i = 0; i < 100; ++i) {
      const double z[2] = {testing::dyadic(rng, 3.0), testing::dyadic(rng, 3.0)};
      for (int idx = 0; idx < 4; ++idx)
        CHECK(std::abs(once.component(idx, z) - twice.component(idx, z)) <= 1e-15);
    }
  }
  SUBCASE("zero stays zero and grid data is rejected") {
    const InitialData zero =
        InitialData::from_callables(2, 3, 1.0, std::vector<InitialData::ComponentFn>(4), true);
    const InitialData anti = antisymmetrize(zero);
    const double z[2] = {0.1, 0.4};
    for (int idx = 0; idx < 4; ++idx) CHECK(anti.component(idx, z) == complex{});

    const InitialData on_simplex =
        InitialData::from_callables(2, 3, 1.0, std::vector<InitialData::ComponentFn>(4), false);
    CHECK_THROWS_AS(antisymmetrize(on_simplex), std::invalid_argument);
  }
}

TEST_CASE("product family carries the single-product structure") {
  Packet right;
  right.center = 2.0;
  right.width = 0.8;
  right.order = 5;
  right.amp_plus = std::polar(0.9, 0.3);
  Packet left;
  left.center = -2.0;
  left.width = 0.8;
  left.order = 5;
  left.amp_minus = std::polar(1.1, -0.5);
  const ProductFamily fam(right, left);

  std::vector<double> zs;
  for (int i = -12; i <= 12; ++i) zs.push_back(0.25 * i);
  CHECK(fam.antisymmetry_residual(zs) == 0.0);

  const InitialData data = fam.to_initial_data();
  std::mt19937_64 rng(25);
  for (int i = 0; i < 100; ++i) {
    double z1 = testing::dyadic(rng, 3.0), z2 = testing::dyadic(rng, 3.0);
    if (z1 > z2) std::swap(z1, z2);
    const double z[2] = {z1, z2};
    CHECK(std::abs(data.component(SpinIndex::parse("+-"), z) - fam.alpha(z1) * fam.beta(z2)) <= 1e-15);
    CHECK(std::abs(data.component(SpinIndex::parse("-+"), z) - fam.gamma(z1) * fam.delta(z2)) <= 1e-15);
  }
  CHECK_THROWS_AS(ProductFamily(left, right), std::invalid_argument);
}

TEST_CASE("validation") {
  SUBCASE("single all-plus component passes") {
    std::vector<InitialData::ComponentFn> comps(4);
    comps[3] = [](std::span<const double> z) {
      return complex(bump(z[0] / 2.0, 4) * bump(z[1] / 2.0, 4), 0.0);
    };
    const InitialData data = InitialData::from_callables(2, 4, 2.0, std::move(comps), true);
    const ModelParams params(2, {1.2}, 4);
    const ValidationReport rep = validate(data, params, GridSpec::covering(data, 65));
    CHECK(rep.pass());
  }
  SUBCASE("mismatched mixed components fail on the diagonal") {
    const InitialData data = two_component_data(
        [](std::span<const double> z) {
          return complex(bump(z[0] / 2.0, 4) * bump(z[1] / 2.0, 4), 0.0);
        },
        nullptr, 2.0);
    const ModelParams params(2, {0.0}, 4);
    const ValidationReport rep = validate(data, params, GridSpec::covering(data, 65));
    CHECK(!rep.pass());
    CHECK(rep.max_violation("compatibility") > 0.1);
  }
  SUBCASE("reflect family satisfies the compatibility identically") {
    const ModelParams params(2, {kPi / 2}, 5);
    const InitialData data = reflect_family(params, 3.0);
    const ValidationReport rep = validate(data, params, GridSpec::covering(data, 65));
    CHECK(rep.pass());
    CHECK(rep.max_violation("compatibility") <= 1e-10);
  }
  SUBCASE("antisymmetrized separated pair passes at a quarter-turn phase") {
    Packet right;
    right.center = 2.0;
    right.width = 0.8;
    right.order = 5;
    right.amp_plus = std::polar(0.9, 0.3);
    Packet left;
    left.center = -2.0;
    left.width = 0.8;
    left.order = 5;
    left.amp_minus = std::polar(1.1, -0.5);
    const InitialData data = ProductFamily(right, left).to_initial_data();
    const ModelParams params(2, {kPi / 2}, 5);
    const ValidationReport rep = validate(data, params, GridSpec::covering(data, 65));
    CHECK(rep.pass());
    CHECK(rep.max_violation("compatibility") <= 1e-10);
  }
  SUBCASE("separated wedge passes for a generic phase") {
    const ModelParams params(3, {0.9, -2.1}, 5);
    const InitialData data = wedge_family(verify::standard_packets(3, 5, true));
    const ValidationReport rep = validate(data, params, GridSpec::covering(data, 49));
    CHECK(rep.pass());
  }
  SUBCASE("support leakage is detected") {
    std::vector<InitialData::ComponentFn> comps(4);
    comps[3] = [](std::span<const double> z) {
      return complex(bump(z[0] / 3.0, 4) * bump(z[1] / 3.0, 4), 0.0);
    };
    // declared radius smaller than the actual support
    const InitialData data = InitialData::from_callables(2, 4, 2.0, std::move(comps), true);
    const ModelParams params(2, {1.2}, 4);
    GridSpec grid{-3.5, 3.5, 65};
    const ValidationReport rep = validate(data, params, grid);
    CHECK(!rep.pass());
    CHECK(rep.max_violation("support") > 1e-3);
  }
  SUBCASE("broken reflect family fails") {
    const ModelParams params(2, {kPi / 2}, 5);
    const InitialData data = reflect_family(params, 3.0, 0.7, 0.9);
    const ValidationReport rep = validate(data, params, GridSpec::covering(data, 65));
    CHECK(!rep.pass());
    CHECK(rep.max_violation("compatibility") > 1e-3);
  }
}

TEST_CASE("grid file round trip") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "mtdirac_test_io";
  fs::create_directories(dir);
  const std::string path = (dir / "data.txt").string();

  const auto packets = verify::standard_packets(2, 3, false);
  const InitialData data = wedge_family(packets);
  save_initial_data(data, path, 21);
  const InitialData loaded = load_initial_data(path);

  CHECK(loaded.n() == 2);
  CHECK(loaded.smoothness() == 3);
  CHECK(loaded.support_radius() == doctest::Approx(data.support_radius()));
  CHECK(!loaded.off_simplex());

  const double r = data.support_radius();
  SUBCASE("node values are reproduced exactly") {
    for (int i = 0; i < 21; ++i) {
      for (int j = i; j < 21; ++j) {
        const double z[2] = {-r + 2.0 * r * i / 20.0, -r + 2.0 * r * j / 20.0};
        for (int idx = 0; idx < 4; ++idx) {
          const complex expected = data.component(idx, z);
          const complex got = loaded.component(idx, z);
          CHECK(got.real() == expected.real());
          CHECK(got.imag() == expected.imag());
        }
      }
    }
  }
  SUBCASE("off-node queries interpolate") {
    std::mt19937_64 rng(26);
    double worst = 0.0;
    for (int i = 0; i < 300; ++i) {
      double z1 = testing::dyadic(rng, r * 0.9), z2 = testing::dyadic(rng, r * 0.9);
      if (z1 > z2) std::swap(z1, z2);
      const double z[2] = {z1, z2};
      for (int idx = 0; idx < 4; ++idx)
        worst = std::max(worst, std::abs(loaded.component(idx, z) - data.component(idx, z)));
    }
    CHECK(worst < 5e-2);  // coarse 21-node grid, degree-3 stencils
  }
  SUBCASE("save/load/save is stable") {
    const std::string path2 = (dir / "data2.txt").string();
    save_initial_data(loaded, path2, 21);
    std::ifstream a(path), b(path2);
    std::string sa((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
    std::string sb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
    CHECK(sa == sb);
  }
}

TEST_CASE("grid file error paths") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "mtdirac_test_io";
  fs::create_directories(dir);

  SUBCASE("malformed header") {
    const std::string path = (dir / "bad_header.txt").string();
    std::ofstream(path) << "N=two m=3 R=1 grid=5\n";
    CHECK_THROWS_WITH_AS(load_initial_data(path), doctest::Contains("malformed header"),
                         std::runtime_error);
  }
  SUBCASE("row outside the ordered simplex") {
    const std::string path = (dir / "bad_row.txt").string();
    std::ofstream out(path);
    out << "N=2 m=1 R=1 grid=2\ncomponent 1\n0.5 -0.5 0 0\n";
    out.close();
    CHECK_THROWS_AS(load_initial_data(path), std::runtime_error);
  }
  SUBCASE("incomplete component block") {
    const std::string path = (dir / "incomplete.txt").string();
    std::ofstream out(path);
    out << "N=2 m=1 R=1 grid=2\n";
    for (int c = 1; c <= 4; ++c) {
      out << "component " << c << "\n";
      out << "-1 -1 0 0\n-1 1 0 0\n";  // missing (1,1)
    }
    out.close();
    CHECK_THROWS_AS(load_initial_data(path), std::runtime_error);
  }
  SUBCASE("bad component count") {
    const std::string path = (dir / "bad_comp.txt").string();
    std::ofstream out(path);
    out << "N=2 m=1 R=1 grid=2\ncomponent 7\n";
    out.close();
    CHECK_THROWS_WITH_AS(load_initial_data(path), doctest::Contains("component"),
                         std::runtime_error);
  }
}

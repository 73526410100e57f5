#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mtdirac/lorentz.hpp"
#include "test_helpers.hpp"

using namespace mtdirac;

TEST_CASE("boost kinematics") {
  SUBCASE("zero rapidity is the identity") {
    const Event e{0.3, -1.2};
    const Event b = boost_event(Boost{0.0}, e);
    CHECK(b.t == e.t);
    CHECK(b.z == e.z);
  }
  SUBCASE("light-cone coordinates scale exponentially") {
    std::mt19937_64 rng(51);
    for (int i = 0; i < 100; ++i) {
      const Event e{testing::dyadic(rng, 2.0), testing::dyadic(rng, 2.0)};
      const double beta = testing::dyadic(rng, 1.0);
      const Event b = boost_event(Boost{beta}, e);
      CHECK(b.z + b.t == doctest::Approx((e.z + e.t) * std::exp(beta)).epsilon(1e-12));
      CHECK(b.z - b.t == doctest::Approx((e.z - e.t) * std::exp(-beta)).epsilon(1e-12));
    }
  }
  SUBCASE("the Minkowski interval is preserved") {
    std::mt19937_64 rng(52);
    for (int i = 0; i < 100; ++i) {
      const Event a{testing::dyadic(rng, 2.0), testing::dyadic(rng, 2.0)};
      const Event b{testing::dyadic(rng, 2.0), testing::dyadic(rng, 2.0)};
      const double beta = testing::dyadic(rng, 1.0);
      const Event ab = boost_event(Boost{beta}, a);
      const Event bb = boost_event(Boost{beta}, b);
      const double before = (a.t - b.t) * (a.t - b.t) - (a.z - b.z) * (a.z - b.z);
      const double after = (ab.t - bb.t) * (ab.t - bb.t) - (ab.z - bb.z) * (ab.z - bb.z);
      CHECK(after == doctest::Approx(before).epsilon(1e-11));
    }
  }
  SUBCASE("composition is additive in rapidity, inverse negates") {
    const Boost a{0.4}, b{-0.9};
    CHECK(a.compose(b).rapidity == doctest::Approx(-0.5));
    const Event e{0.2, 1.0};
    const Event round = boost_event(a.inverse(), boost_event(a, e));
    CHECK(round.t == doctest::Approx(e.t).epsilon(1e-14));
    CHECK(round.z == doctest::Approx(e.z).epsilon(1e-14));
  }
}

TEST_CASE("domain classification is boost invariant") {
  std::mt19937_64 rng(53);
  for (int i = 0; i < 200; ++i) {
    const double beta = testing::dyadic(rng, 1.0);
    const Configuration interior = verify::random_interior_configuration(3, 3.0, 1.0, rng);
    CHECK(classify(boost_configuration(Boost{beta}, interior)).kind == DomainClass::Interior);

    const Configuration stratum =
        verify::random_stratum_configuration(3, static_cast<int>(rng() % 2), 3.0, 1.0, false, rng);
    const Classification before = classify(stratum);
    const Classification after = classify(boost_configuration(Boost{beta}, stratum));
    CHECK(after.kind == before.kind);
    CHECK(after.stratum == before.stratum);
  }
}

TEST_CASE("boosted evaluator") {
  const ModelParams params(2, {1.1}, 5);
  const WaveFunction psi = verify::standard_wavefunction(params, true);

  SUBCASE("zero rapidity returns identical values") {
    const BoostedWaveFunction bw = boost_wavefunction(Boost{0.0}, psi);
    std::mt19937_64 rng(54);
    for (int i = 0; i < 100; ++i) {
      const Configuration cfg = verify::random_interior_configuration(2, 3.0, 1.0, rng);
      const SpinIndex s = testing::random_spin(2, rng);
      CHECK(bw.evaluate_full(cfg, s) == psi.evaluate_full(cfg, s));
    }
  }
  SUBCASE("balanced components carry unit factor") {
    std::mt19937_64 rng(55);
    for (int i = 0; i < 50; ++i) {
      const double beta = testing::dyadic(rng, 1.0);
      const BoostedWaveFunction bw = boost_wavefunction(Boost{beta}, psi);
      CHECK(bw.spin_factor(SpinIndex::parse("+-")) == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(bw.spin_factor(SpinIndex::parse("-+")) == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(bw.spin_factor(SpinIndex::parse("++")) *
                bw.spin_factor(SpinIndex::parse("--")) ==
            doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  SUBCASE("boundary conditions hold on boosted strata") {
    std::mt19937_64 rng(56);
    const complex fac = std::polar(1.0, params.phase(0));
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double beta = 2.0 * (static_cast<double>(rng() % 1000) / 1000.0) - 1.0;
      const BoostedWaveFunction bw = boost_wavefunction(Boost{beta}, psi);
      const Configuration q =
          verify::random_stratum_configuration(2, 0, 2.2, 0.9, i % 2 == 0, rng);
      const Configuration bq = boost_configuration(Boost{beta}, q);
      const complex lhs = bw.evaluate_full(bq, SpinIndex::parse("+-"));
      const complex rhs = fac * bw.evaluate_full(bq, SpinIndex::parse("-+"));
      worst = std::max(worst, std::abs(lhs - rhs));
    }
    CHECK(worst <= 1e-9);
  }
}

TEST_CASE("boosting a flat slice gives the known tilted graph") {
  const double t0 = 0.35, beta = 0.6;
  const Hypersurface flat = Hypersurface::flat(t0);
  const Hypersurface img = boost_surface(Boost{beta}, flat, 60.0);
  const double ch = std::cosh(beta), th = std::tanh(beta);
  for (double zp : {-3.0, -0.7, 0.0, 1.3, 4.2}) {
    CHECK(img.time(zp) == doctest::Approx(t0 / ch + zp * th).epsilon(1e-12));
    CHECK(img.slope(zp) == doctest::Approx(th).epsilon(1e-12));
  }
  CHECK(img.slope_bound() < 1.0);
}

TEST_CASE("surface norm is boost invariant (single rapidity spot check)") {
  const ModelParams params(2, {2.2}, 6);
  const WaveFunction psi = verify::standard_wavefunction(params, false);
  const Hypersurface base = Hypersurface::flat(0.0);
  const QuadratureSpec quad{24, 12, true};
  const double base_norm =
      surface_integral(psi, base, propagation_box(psi.data().support_radius(), base), quad);

  const Boost b{0.5};
  const BoostedWaveFunction bw = boost_wavefunction(b, psi);
  const Hypersurface bsurf = boost_surface(b, base, 60.0);
  const FieldView bview = field_view(bw);
  const double bnorm =
      surface_integral(bview, bsurf, propagation_box(bview.support_radius, bsurf), quad);
  CHECK(std::abs(bnorm / base_norm - 1.0) <= 1e-6);
}

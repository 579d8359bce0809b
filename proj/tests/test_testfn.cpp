#include <doctest.h>

#include <cmath>
#include <random>

#include "cauchylab/error.hpp"
#include "cauchylab/testfn.hpp"

using namespace cauchylab;

TEST_SUITE("testfn") {
  TEST_CASE("sign on I(0,1): lower median, a = 1/2") {
    const auto tf = build_test_function(RealFunction::sign(), Interval(0.0, 1.0), 2.0, 256);
    CHECK(tf.median == -1.0);
    CHECK(tf.a == doctest::Approx(0.5));
    CHECK(tf.epsilon == doctest::Approx(1.0));
    const double scale = std::pow(2.0, -0.5);
    for (std::size_t i = 0; i < tf.f.size(); ++i) {
      const double x = tf.f.node(i);
      CHECK(tf.f[i].real() == doctest::Approx(x > 0 ? 0.5 * scale : -0.5 * scale));
    }
    const auto audit = audit_test_function(tf, RealFunction::sign().sample(tf.f.grid()));
    CHECK(audit.passed());
    CHECK(audit.rows().size() == 6);
  }

  TEST_CASE("mean zero on the grid") {
    const auto tf = build_test_function(RealFunction::truncated_log(0.3), Interval(0.2, 0.5), 3.0, 200);
    cplx s{};
    for (std::size_t i = 0; i < tf.f.size(); ++i) s += tf.f[i];
    CHECK(std::abs(s) * tf.f.step() < 1e-12);
  }

  TEST_CASE("support on a wider grid") {
    const Grid g = Grid::cell_centered(-4.0, 4.0, 800);
    const auto b = RealFunction::linear(1.0).sample(g);
    const Interval I(1.0, 0.5);
    const auto tf = build_test_function(b, I, 2.0);
    for (std::size_t i = 0; i < g.count; ++i)
      if (!I.contains(g.node(i))) CHECK(tf.f[i] == cplx(0.0, 0.0));
    CHECK(audit_test_function(tf, b).passed());
  }

  TEST_CASE("constant symbols are rejected") {
    CHECK_THROWS_AS(build_test_function(RealFunction::constant(1.0), Interval(0.0, 1.0), 2.0), InputError);
    CHECK_THROWS_AS(build_test_function(RealFunction::sign(), Interval(0.0, 1.0), 1.0), InputError);
  }

  TEST_CASE("random audit suite") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-3, 3), r(0.01, 2.0), pp(1.2, 4.0);
    for (int i = 0; i < 30; ++i) {
      const double c = u(rng);
      const RealFunction b = (i % 2) ? RealFunction::truncated_log(c) : RealFunction::sign(c);
      const Interval I(c + 0.5 * u(rng) * r(rng), r(rng));
      try {
        const auto tf = build_test_function(b, I, pp(rng), 128);
        CHECK(audit_test_function(tf, b.sample(tf.f.grid())).passed());
      } catch (const InputError&) {
        // sign with the jump outside I is constant there
        CHECK(i % 2 == 0);
      }
    }
  }

  TEST_CASE("annulus ladder for the sign symbol") {
    const CauchyKernel k(LipschitzCurve::flat());
    const auto tf = build_test_function(RealFunction::sign(), Interval(0.0, 1.0), 2.0, 256);
    const std::vector<int> ks{3, 4, 5, 6};
    const auto lad = annulus_ladder(RealFunction::sign(), tf, ks, k, AnnulusConfig{8.0, 128});
    CHECK(lad.lower.size() == 4);
    CHECK(lad.upper.size() == 4);
    CHECK(lad.passed());
    CHECK(lad.min_lower_scaled > 0);
    CHECK_THROWS_AS(verify_annulus_lower(RealFunction::sign(), tf, 2, k, AnnulusConfig{}), InputError);
  }

  TEST_CASE("intermediate bounds") {
    const CauchyKernel k(LipschitzCurve::sawtooth(1.0, 4.0));
    const auto b = RealFunction::truncated_log();
    const auto tf = build_test_function(b, Interval(0.0, 1.0), 2.0, 256);
    const auto ib = verify_intermediate_bounds(b, tf, 4, k, IntermediateConfig{32, 1.1, 512});
    CHECK(ib.pointwise.passed());
    CHECK(ib.median_drift.passed());
  }
}

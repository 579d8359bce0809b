#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "cauchylab/curve.hpp"
#include "cauchylab/error.hpp"

using namespace cauchylab;

TEST_SUITE("curve") {
  TEST_CASE("sawtooth hits its corners") {
    const auto c = LipschitzCurve::sawtooth(1.0, 4.0);
    CHECK(c.height(0.0) == doctest::Approx(0.0));
    CHECK(c.height(1.0) == doctest::Approx(1.0));
    CHECK(c.height(2.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(c.height(3.0) == doctest::Approx(-1.0));
    CHECK(c.height(-1.0) == doctest::Approx(-1.0));
    CHECK(c.height(5.0) == doctest::Approx(1.0));
    CHECK(c.lipschitz_constant() == doctest::Approx(1.0));
  }

  TEST_CASE("affine and flat") {
    CHECK(LipschitzCurve::flat().height(3.7) == 0.0);
    CHECK(LipschitzCurve::flat().lipschitz_constant() == 0.0);
    const auto a = LipschitzCurve::affine(-2.0);
    CHECK(a.height(1.5) == doctest::Approx(-3.0));
    CHECK(a.lipschitz_constant() == doctest::Approx(2.0));
  }

  TEST_CASE("smooth bump constant matches a dense difference quotient") {
    const double h = 0.7, w = 1.3;
    const auto c = LipschitzCurve::smooth_bump(h, w);
    double best = 0.0;
    for (int i = -40000; i < 40000; ++i) {
      const double x = i * 1e-4;
      best = std::max(best, std::abs(c.height(x + 1e-4) - c.height(x)) / 1e-4);
    }
    CHECK(c.lipschitz_constant() == doctest::Approx(best).epsilon(1e-4));
    CHECK(best <= c.lipschitz_constant() * (1 + 1e-12));
  }

  TEST_CASE("verify_lipschitz on random pairs") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-20, 20);
    std::vector<std::pair<double, double>> pairs;
    for (int i = 0; i < 2000; ++i) pairs.emplace_back(u(rng), u(rng));
    for (const auto& c : {LipschitzCurve::flat(), LipschitzCurve::affine(1.0), LipschitzCurve::sawtooth(1.0, 4.0),
                          LipschitzCurve::smooth_bump(1.0, 0.5)}) {
      const auto rep = verify_lipschitz(c, pairs);
      CHECK(rep.passed());
    }
  }

  TEST_CASE("invalid parameters are rejected") {
    CHECK_THROWS_AS(LipschitzCurve::sawtooth(1.0, 0.0), InputError);
    CHECK_THROWS_AS(LipschitzCurve::smooth_bump(1.0, -1.0), InputError);
    const std::vector<std::pair<double, double>> same{{1.0, 1.0}};
    CHECK_THROWS_AS(verify_lipschitz(LipschitzCurve::flat(), same), InputError);
  }
}

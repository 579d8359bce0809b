#include <doctest.h>

#include <cmath>

#include "cauchylab/error.hpp"
#include "cauchylab/functions.hpp"

using namespace cauchylab;

TEST_SUITE("functions") {
  TEST_CASE("closed forms") {
    CHECK(RealFunction::constant(2.5)(100.0) == 2.5);
    CHECK(RealFunction::linear(2.0, 1.0)(3.0) == 7.0);
    const auto ind = RealFunction::indicator(-1.0, 1.0);
    CHECK(ind(-1.0) == 1.0);
    CHECK(ind(1.0) == 0.0);
    CHECK(RealFunction::indicator(0.0, 2.0, 2)(1.5) == doctest::Approx(2.25));
    CHECK(RealFunction::sign()(-0.1) == -1.0);
    CHECK(RealFunction::sign()(0.0) == 0.0);
    CHECK(RealFunction::sign(1.0)(1.5) == 1.0);
    CHECK(RealFunction::truncated_log()(std::exp(-2.0)) == doctest::Approx(-2.0));
    CHECK(RealFunction::truncated_log(0.0, 1e-3, 10.0)(0.0) == doctest::Approx(std::log(1e-3)));
    CHECK(RealFunction::truncated_log(0.0, 1e-3, 10.0)(-1e6) == doctest::Approx(std::log(10.0)));
    const auto bump = RealFunction::bump(1.0, 2.0, 3.0);
    CHECK(bump(1.0) == doctest::Approx(3.0));
    CHECK(bump(3.0) == 0.0);
    CHECK(bump(-1.0) == 0.0);
    CHECK(bump(2.0) == doctest::Approx(3.0 * std::exp(1.0 - 1.0 / 0.75)));
    const auto pc = RealFunction::piecewise_constant({0.0, 1.0}, {-1.0, 2.0, 5.0});
    CHECK(pc(-0.5) == -1.0);
    CHECK(pc(0.0) == 2.0);
    CHECK(pc(1.0) == 5.0);
  }

  TEST_CASE("scale and dilation") {
    const auto f = RealFunction::linear(1.0).scaled(3.0).dilated(2.0);
    CHECK(f(1.5) == doctest::Approx(9.0));
  }

  TEST_CASE("support and sup norm") {
    CHECK(RealFunction::bump(1.0, 2.0).support()->first == doctest::Approx(-1.0));
    CHECK(RealFunction::bump(1.0, 2.0).support()->second == doctest::Approx(3.0));
    CHECK(RealFunction::bump(0.0, 1.0).dilated(2.0).support()->second == doctest::Approx(0.5));
    CHECK_FALSE(RealFunction::sign().support().has_value());
    CHECK(RealFunction::sign().sup_norm().value() == 1.0);
    CHECK_FALSE(RealFunction::linear(1.0).sup_norm().has_value());
    CHECK(RealFunction::truncated_log(0.0, 1e-3, 10.0).sup_norm().value() == doctest::Approx(std::log(1e3)));
  }

  TEST_CASE("sampled functions read cells") {
    const Grid g{0.5, 1.0, 3};  // cells [0,1), [1,2), [2,3)
    const auto s = RealFunction::sampled(SampledFunction::sample(g, [](double x) { return x < 1 ? 1.0 : 3.0; }));
    CHECK(s(0.7) == 1.0);
    CHECK(s(1.0) == 2.0);  // boundary: mean of neighbours
    CHECK(s(2.9) == 3.0);
    CHECK(s(-0.2) == 0.0);
    CHECK(s(3.2) == 0.0);
  }

  TEST_CASE("invalid parameters") {
    CHECK_THROWS_AS(RealFunction::indicator(1.0, 1.0), InputError);
    CHECK_THROWS_AS(RealFunction::bump(0.0, 0.0), InputError);
    CHECK_THROWS_AS(RealFunction::truncated_log(0.0, 1.0, 0.5), InputError);
    CHECK_THROWS_AS(RealFunction::piecewise_constant({1.0, 0.0}, {1.0, 2.0, 3.0}), InputError);
    CHECK_THROWS_AS(RealFunction::piecewise_constant({0.0}, {1.0}), InputError);
  }
}

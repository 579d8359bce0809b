#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cauchylab/error.hpp"
#include "cauchylab/kernel.hpp"

using namespace cauchylab;

TEST_SUITE("kernel") {
  TEST_CASE("flat kernel is the Hilbert kernel") {
    const CauchyKernel k(LipschitzCurve::flat());
    CHECK(k(0.0, 2.0) == cplx(0.5, 0.0));
    CHECK(k(1.0, -3.0) == cplx(-0.25, 0.0));
    CHECK(k.size_constant() == 2.0);
    CHECK(k.smoothness_exponent() == 1.0);
  }

  TEST_CASE("affine kernel") {
    // K = 1 / ((1 + i c)(y - x))
    const double c = 0.75;
    const CauchyKernel k(LipschitzCurve::affine(c));
    const cplx expect = 1.0 / (cplx(1.0, c) * 2.5);
    const cplx got = k(-1.0, 1.5);
    CHECK(got.real() == doctest::Approx(expect.real()).epsilon(1e-15));
    CHECK(got.imag() == doctest::Approx(expect.imag()).epsilon(1e-15));
    CHECK(k.size_constant() == doctest::Approx(3.5));
  }

  TEST_CASE("reciprocal agrees with complex division") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> e(-30, 30), s(-1, 1);
    for (int i = 0; i < 5000; ++i) {
      const double u = s(rng) * std::pow(10.0, e(rng) / 3);
      const double v = s(rng) * std::pow(10.0, e(rng) / 3);
      if (u == 0 && v == 0) continue;
      const cplx ref = 1.0 / cplx(u, v);
      const cplx got = cauchy_reciprocal(u, v);
      CHECK(std::abs(got - ref) <= 1e-15 * std::abs(ref));
    }
  }

  TEST_CASE("prefactor") {
    const CauchyKernel k(LipschitzCurve::flat(), true);
    const cplx v = k(0.0, 1.0);
    CHECK(v.real() == doctest::Approx(0.0));
    CHECK(v.imag() == doctest::Approx(-1.0 / std::numbers::pi));
  }

  TEST_CASE("diagonal is singular") {
    const CauchyKernel k(LipschitzCurve::sawtooth(1.0, 4.0));
    CHECK_THROWS_AS(k(0.3, 0.3), SingularityError);
    CHECK_THROWS_AS(eval_kernel(k, 0.3, 0.3), SingularityError);
  }

  TEST_CASE("pointwise checks") {
    const CauchyKernel k(LipschitzCurve::sawtooth(1.0, 4.0));
    CHECK(check_size(k, 0.0, 1e-9).pass);
    CHECK(check_size_standard(k, 0.0, 3.0).pass);
    CHECK(check_smoothness(k, 0.0, 2.0, 2.9, false).pass);
    CHECK(check_smoothness(k, 0.0, 2.0, 1.1, true).pass);
    CHECK_THROWS_AS(check_smoothness(k, 0.0, 2.0, 3.5, false), InputError);
    CHECK_THROWS_AS(check_smoothness(k, 1.0, 1.0, 1.0, false), InputError);
  }

  TEST_CASE("randomised sweep has no violations and is reproducible") {
    for (const auto& c : {LipschitzCurve::flat(), LipschitzCurve::affine(1.0), LipschitzCurve::sawtooth(1.0, 4.0),
                          LipschitzCurve::smooth_bump(2.0, 0.3)}) {
      const CauchyKernel k(c);
      const auto a = verify_kernel_estimates(k, 4000, 5);
      CHECK(a.passed());
      CHECK(a.violations() == 0);
      const auto b = verify_kernel_estimates(k, 4000, 5);
      CHECK(a.size.to_json().dump() == b.size.to_json().dump());
      CHECK(a.smoothness.max_ratio() <= 1.0);
    }
  }
}

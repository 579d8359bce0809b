#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "cauchylab/bmo.hpp"
#include "cauchylab/error.hpp"
#include "cauchylab/functions.hpp"

using namespace cauchylab;

TEST_SUITE("bmo") {
  TEST_CASE("averages and oscillations") {
    const Grid g = Grid::cell_centered(-4.0, 4.0, 800);
    const auto lin = RealFunction::linear(2.0, 1.0).sample(g);
    CHECK(average(lin, Interval(1.0, 0.5)) == doctest::Approx(3.0));
    // mean |2x - 2| over (0.5, 1.5) = 1/2 in the continuum
    CHECK(mean_oscillation(lin, Interval(1.0, 0.5)) == doctest::Approx(0.5).epsilon(1e-3));
    const auto sgn = RealFunction::sign().sample(g);
    CHECK(mean_oscillation(sgn, Interval(0.0, 1.0)) == doctest::Approx(1.0));
    CHECK(mean_oscillation(sgn, Interval(2.0, 1.0)) == 0.0);
    CHECK(mean_deviation(sgn, Interval(0.0, 1.0), 0.5) == doctest::Approx(1.0));
    CHECK_THROWS_AS(average(sgn, Interval(100.0, 1.0)), InputError);
  }

  TEST_CASE("lower median of the sign function") {
    const Grid g = Grid::cell_centered(-1.0, 1.0, 100);
    const auto m = median(RealFunction::sign().sample(g), Interval(0.0, 1.0));
    CHECK(m.value == -1.0);
    CHECK(m.upper_excess == doctest::Approx(0.5));
    CHECK(m.lower_excess == 0.0);
    CHECK(m.nodes == 100);
  }

  TEST_CASE("median conditions and minimality against brute force") {
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<int> pick(0, 4);
    const Grid g{0.0, 1.0, 41};
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<cplx> v(g.count);
      for (auto& x : v) x = static_cast<double>(pick(rng));
      const SampledFunction f(g, v);
      const Interval I(20.0, 15.5);
      const auto m = median(f, I);
      const auto r = nodes_in(g, I);
      double smallest = 1e300;
      for (std::size_t i = r.begin; i < r.end; ++i) {
        const double c = v[i].real();
        std::size_t above = 0, below = 0;
        for (std::size_t j = r.begin; j < r.end; ++j) {
          above += v[j].real() > c;
          below += v[j].real() < c;
        }
        if (2 * above <= r.size() && 2 * below <= r.size()) smallest = std::min(smallest, c);
      }
      CHECK(m.value == smallest);
    }
  }

  TEST_CASE("dyadic sweep") {
    const Grid g{0.5, 1.0, 16};  // cells [0, 16)
    const auto sweep = dyadic_sweep(g, Interval(8.0, 8.0));
    // lengths 1, 2, 4, 8, 16 with 16, 15, 13, 9, 1 positions
    CHECK(sweep.size() == 16 + 15 + 13 + 9 + 1);
    for (const auto& I : sweep) {
      const double len = I.measure();
      CHECK(std::exp2(std::round(std::log2(len))) == doctest::Approx(len));
      CHECK(I.left() == doctest::Approx(std::round(I.left())));
    }
    CHECK(dyadic_sweep(g, Interval(8.0, 8.0), 2, 2).size() == 7 + 5 + 1);
  }

  TEST_CASE("bmo norm of log is bounded across scales") {
    const Grid g = Grid::cell_centered(-8.0, 8.0, 4096);
    const auto lg = RealFunction::truncated_log().sample(g);
    const auto sweep = dyadic_sweep(g, Interval(0.0, 8.0), 16);
    const double b = bmo_norm(lg, sweep);
    CHECK(b > 0.5);
    CHECK(b < 1.5);
    const auto osc = oscillations(lg, sweep);
    CHECK(*std::max_element(osc.begin(), osc.end()) == b);
  }

  TEST_CASE("vmo profile separates log from a bump") {
    const Grid g = Grid::cell_centered(-4.0, 4.0, 2048);
    const std::vector<double> deltas{0.01, 0.1}, Rs{1.0, 2.0};
    const auto lg = vmo_profile(RealFunction::truncated_log().sample(g), deltas, Rs, 4);
    const auto bp = vmo_profile(RealFunction::bump().sample(g), deltas, Rs, 4);
    CHECK(lg.small_scale[0].second > 0.5);
    CHECK(bp.small_scale[0].second < 0.05);
    CHECK(bp.far_away[1].second == 0.0);
    CHECK(bp.small_scale[0].second <= bp.small_scale[1].second);
    CHECK_THROWS_AS(vmo_profile(RealFunction::bump().sample(g), std::vector<double>{}, Rs), InputError);
  }
}

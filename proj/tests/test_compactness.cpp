#include <doctest.h>

#include <cmath>

#include "cauchylab/commutator.hpp"
#include "cauchylab/compactness.hpp"
#include "cauchylab/error.hpp"

using namespace cauchylab;

TEST_SUITE("compactness") {
  TEST_CASE("fk curves of an indicator") {
    const Grid g{0.125, 0.25, 64};  // cells over [0, 16)
    const auto f = RealFunction::indicator(2.0, 4.0).sample(g);
    const std::vector<SampledFunction> imgs{f};
    const std::vector<double> ts{1.0, 3.0, 5.0}, zs{0.5, 0.25};
    const auto rep = fk_diagnose(imgs, 2.0, ts, zs);
    CHECK(rep.uniform_bound == doctest::Approx(std::sqrt(2.0)));
    CHECK(rep.tail_curve[0].second == doctest::Approx(std::sqrt(2.0)));
    CHECK(rep.tail_curve[1].second == doctest::Approx(1.0));
    CHECK(rep.tail_curve[2].second == 0.0);
    // sorted ascending, ||f(.+z) - f||_2 = sqrt(2|z|)
    CHECK(rep.equicontinuity_curve[0].first == 0.25);
    CHECK(rep.equicontinuity_curve[0].second == doctest::Approx(std::sqrt(0.5)));
    CHECK(rep.equicontinuity_curve[1].second == doctest::Approx(1.0));
    CHECK(rep.to_report().passed());
    CHECK_THROWS_AS(fk_diagnose(imgs, 2.0, std::vector<double>{}, zs), InputError);
    CHECK_THROWS_AS(fk_diagnose(imgs, 2.0, ts, std::vector<double>{-1.0}), InputError);
  }

  TEST_CASE("witness sequences") {
    const auto s = small_scale_sequence(32.0, 3);
    CHECK(s[0].radius() == doctest::Approx(1.0 / 32));
    CHECK(s[2].radius() == doctest::Approx(1.0 / 32768));
    const auto l = large_scale_sequence(4.0, 2);
    CHECK(l[1].radius() == doctest::Approx(16.0));
    const auto far = far_away_sequence(16.0, 1.0, 0.5, 2.0, 3);
    CHECK(far[0].center() == doctest::Approx(2.5));
    CHECK(far[1].center() == doctest::Approx(2.5 + 64.0 + 0.5));
    CHECK(far[2].center() == doctest::Approx(far[1].center() + 64.5));
    CHECK_THROWS_AS(far_away_sequence(16.0, 1.0, 1.5, 0.0, 3), InputError);
    CHECK(witness_case_from_string(to_string(WitnessCase::FarAway)) == WitnessCase::FarAway);
    CHECK_THROWS_AS(witness_case_from_string("tiny"), InputError);
  }

  TEST_CASE("witness geometry is validated") {
    WitnessConfig cfg;
    cfg.intervals = small_scale_sequence(4.0, 3);  // ratio 1/4 is not below 1/16
    CHECK_THROWS_AS(cfg.validate(), InputError);
    cfg.intervals = small_scale_sequence(32.0, 3);
    CHECK_NOTHROW(cfg.validate());
    cfg.kind = WitnessCase::LargeScale;
    CHECK_THROWS_AS(cfg.validate(), InputError);
    cfg.intervals = large_scale_sequence(32.0, 3);
    CHECK_NOTHROW(cfg.validate());
    cfg.kind = WitnessCase::FarAway;
    cfg.intervals = {Interval(10.0, 0.5), Interval(20.0, 0.5)};
    CHECK_THROWS_AS(cfg.validate(), InputError);
    cfg.intervals = far_away_sequence(16.0, 1.0, 0.5, 2.0, 3);
    CHECK_NOTHROW(cfg.validate());
  }

  TEST_CASE("witness distances are symmetric and separated for log") {
    const CauchyKernel k(LipschitzCurve::flat());
    WitnessConfig cfg;
    cfg.intervals = small_scale_sequence(32.0, 3);
    cfg.nodes_per_radius = 16;
    cfg.k_ladder = {3, 4};
    cfg.annulus_cells = 64;
    cfg.cells_per_gap = 32;
    const auto rep = witness_separation(RealFunction::truncated_log(), cfg, k);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) CHECK(rep.distances[i][j] == rep.distances[j][i]);
    CHECK(rep.min_distance > 1.0);
    CHECK(rep.A3 > 0);
    CHECK(std::log2(rep.suggested_A2) == doctest::Approx(std::round(std::log2(rep.suggested_A2))));
    CHECK(rep.to_report(cfg).passed());
  }

  TEST_CASE("tail decay for a bump symbol") {
    const CauchyKernel k(LipschitzCurve::flat());
    const auto f = RealFunction::indicator(-0.5, 0.5).sample(Grid::cell_centered(-1.0, 1.0, 128));
    const std::vector<SampledFunction> fam{f};
    const std::vector<double> ts{4, 8, 16, 32};
    TailConfig tc;
    tc.cells_per_gap = 32;
    const auto rep = tail_decay_check(RealFunction::bump(), fam, 2.0, ts, k, tc);
    CHECK(rep.passed());
    CHECK(rep.summary("slope") == doctest::Approx(-0.5).epsilon(0.3));
    CHECK_THROWS_AS(tail_decay_check(RealFunction::sign(), fam, 2.0, ts, k, tc), InputError);
    const std::vector<double> low{1.5};
    CHECK_THROWS_AS(tail_decay_check(RealFunction::bump(), fam, 2.0, low, k, tc), InputError);
  }

  TEST_CASE("zero symbol has no tail") {
    const CauchyKernel k(LipschitzCurve::flat());
    const auto f = RealFunction::indicator(-0.5, 0.5).sample(Grid::cell_centered(-1.0, 1.0, 64));
    const std::vector<SampledFunction> fam{f};
    const std::vector<double> ts{4, 8};
    const auto rep = tail_decay_check(RealFunction::bump().scaled(0.0), fam, 2.0, ts, k, TailConfig{});
    CHECK(rep.passed());
    CHECK_FALSE(rep.has_summary("slope"));
  }

  TEST_CASE("equicontinuity split reassembles the difference") {
    const CauchyKernel k(LipschitzCurve::sawtooth(1.0, 4.0));
    const auto f = RealFunction::indicator(-1.0, 1.0).sample(Grid::cell_centered(-1.0, 1.0, 200));
    const Grid lattice = midpoint_lattice(f.grid(), -3.0, 3.0, 0.05);
    const auto b = RealFunction::bump(0.2, 1.5);
    const auto t = equicontinuity_terms(b, f, k, 0.03, 0.25, lattice);
    CHECK(t.report.passed());
    CHECK(t.norms[0] > 0);
    CHECK(t.z == doctest::Approx(0.03));
    // identity against independent commutator values
    const auto g = apply_commutator(b, f, k, lattice);
    Grid shifted = lattice;
    shifted.origin += 0.03;
    const auto gz = apply_commutator(b, f, k, shifted);
    double diff = 0.0;
    for (std::size_t i = 0; i < lattice.count; ++i) diff += std::norm(g[i] - gz[i]);
    diff = std::sqrt(lattice.step * diff);
    CHECK(diff <= t.norms[0] + t.norms[1] + t.norms[2] + t.norms[3] + 1e-12);
    CHECK_THROWS_AS(equicontinuity_terms(b, f, k, 0.031, 0.25, lattice), InputError);
    CHECK_THROWS_AS(equicontinuity_terms(b, f, k, 0.03, 0.6, lattice), InputError);
  }
}

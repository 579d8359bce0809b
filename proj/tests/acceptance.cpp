// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fail.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cauchylab/bmo.hpp"
#include "cauchylab/cli.hpp"
#include "cauchylab/commutator.hpp"
#include "cauchylab/compactness.hpp"
#include "cauchylab/config.hpp"
#include "cauchylab/error.hpp"
#include "cauchylab/kernel.hpp"
#include "cauchylab/operator.hpp"
#include "cauchylab/testfn.hpp"

using namespace cauchylab;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// 1: zero violations of the three kernel estimates, three curves, 1e5 samples each.
Outcome kernel_estimates() {
  std::size_t violations = 0;
  double worst = 0.0;
  for (const auto& c : {LipschitzCurve::flat(), LipschitzCurve::affine(1.0), LipschitzCurve::sawtooth(1.0, 4.0)}) {
    const auto r = verify_kernel_estimates(CauchyKernel(c), 100000, 2024);
    violations += r.violations();
    worst = std::max({worst, r.size.max_ratio(), r.smoothness.max_ratio(), r.transposed.max_ratio()});
  }
  return {violations == 0, std::to_string(violations) + " violations, max lhs/rhs " + fmt("%.4f", worst)};
}

// 2: flat curve, chi_[-1,1] at x = 2 against log(1/3).
Outcome flat_closed_form() {
  const CauchyKernel k(LipschitzCurve::flat());
  auto error_at = [&](double h) {
    const auto n = static_cast<std::size_t>(std::llround(4.0 / h));
    const auto f = RealFunction::indicator(-1.0, 1.0).sample(Grid::cell_centered(-2.0, 2.0, n));
    return std::abs(apply_pv(k, f, 2.0, PvConfig::for_grid(f.grid())) - std::log(1.0 / 3.0));
  };
  const double e1 = error_at(1e-4);
  const double e2 = error_at(5e-5);
  return {e1 < 1e-4 && e2 <= 0.5 * e1, "error " + fmt("%.3e", e1) + " at h = 1e-4, " + fmt("%.3e", e2) + " at h/2"};
}

// 3: homogeneity ladder for L = 0 and L = 1.
Outcome homogeneity() {
  const std::vector<double> Ms{16, 64, 256, 1024};
  bool ok = true;
  std::string detail;
  for (double L : {0.0, 1.0}) {
    const auto curve = L == 0.0 ? LipschitzCurve::flat() : LipschitzCurve::affine(L);
    const auto rep = homogeneity_ladder(curve, Ms, HomogeneityConfig{});
    ok = ok && rep.passed();
    detail += (detail.empty() ? "" : ", ") + std::string("L=") + fmt("%g", L) + " slope " +
              fmt("%.3f", rep.summary("slope")) + " violations " + std::to_string(rep.violations());
  }
  return {ok, detail};
}

// 4: construction invariants on 100 random cases.
Outcome test_function_invariants() {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1, 1), rad(0.01, 3.0), pp(1.1, 6.0);
  std::uniform_int_distribution<int> kind(0, 3);
  int failures = 0, built = 0;
  while (built < 100) {
    const double r = rad(rng);
    const Interval I(5 * u(rng), r);
    // symbols with a feature inside I, so none is constant there
    const double c = I.center() + 0.8 * r * u(rng);
    RealFunction b = RealFunction::constant(0.0);
    switch (kind(rng)) {
      case 0:
        b = RealFunction::sign(c);
        break;
      case 1:
        b = RealFunction::truncated_log(c);
        break;
      case 2:
        b = RealFunction::piecewise_constant({c - 0.3 * r, c + 0.2 * r}, {u(rng), 2 + u(rng), u(rng) - 2});
        break;
      default:
        b = RealFunction::linear(u(rng) + 2.0, u(rng));
        break;
    }
    const std::size_t nodes = 64 + 64 * static_cast<std::size_t>(built % 4);
    const auto tf = build_test_function(b, I, pp(rng), nodes);
    if (!audit_test_function(tf, b.sample(tf.f.grid())).passed()) ++failures;
    ++built;
  }
  return {failures == 0, std::to_string(failures) + " of 100 cases with a violated invariant"};
}

// 5: annulus ratios for sign and truncated log.
Outcome annulus() {
  const CauchyKernel k(LipschitzCurve::flat());
  const std::vector<int> ks{3, 4, 5, 6, 7, 8};
  bool ok = true;
  std::string detail;
  for (const auto& [name, b] : {std::pair{"sign", RealFunction::sign()}, std::pair{"log", RealFunction::truncated_log()}}) {
    const auto tf = build_test_function(b, Interval(0.0, 1.0), 2.0, 256);
    const auto lad = annulus_ladder(b, tf, ks, k, AnnulusConfig{});
    ok = ok && lad.passed(3.0, 10.0);
    detail += (detail.empty() ? "" : ", ") + std::string(name) + " lower spread " + fmt("%.3f", lad.lower_spread) +
              " upper spread " + fmt("%.3f", lad.upper_spread);
  }
  return {ok, detail};
}

// 6: median against the brute-forced best node value.
Outcome median_equivalence() {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0, 1);
  std::uniform_int_distribution<int> kind(0, 2);
  int violations = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 64 + static_cast<std::size_t>(u(rng) * 448);
    const double h = 0.01 + u(rng) * 0.1;
    const Grid g{0.0, h, n};
    std::vector<cplx> v(n);
    const int k = kind(rng);
    const double a = 1 + 10 * u(rng), w = 0.1 + 2 * u(rng);
    for (std::size_t i = 0; i < n; ++i) {
      const double x = g.node(i);
      if (k == 0) v[i] = std::floor(4 * u(rng));
      else if (k == 1) v[i] = a * std::sin(w * x) + 0.1 * u(rng);
      else v[i] = std::log(std::abs(x - 0.3 * h * static_cast<double>(n)) + 1e-3);
    }
    const SampledFunction f(g, v);
    const double lo = g.node(0) + u(rng) * 0.5 * static_cast<double>(n) * h;
    const double hi = lo + (0.05 + u(rng)) * 0.5 * static_cast<double>(n) * h;
    const Interval I = Interval::from_endpoints(lo, hi);
    const IndexRange r = nodes_in(g, I);
    if (r.empty()) continue;
    const double lhs = mean_deviation(f, I, median(f, I).value);
    double best = 1e300;
    for (std::size_t i = r.begin; i < r.end; ++i) best = std::min(best, mean_deviation(f, I, v[i].real()));
    const double rhs = 2.0 * best + 4.0 * h;
    if (!(lhs <= rhs)) ++violations;
    worst = std::max(worst, lhs / rhs);
  }
  return {violations == 0, std::to_string(violations) + " violations in 200 cases, max lhs/rhs " + fmt("%.4f", worst)};
}

// 7: tail slope of the commutator with a bump symbol.
Outcome tail_decay() {
  const CauchyKernel k(LipschitzCurve::flat());
  const Grid g = Grid::cell_centered(-1.0, 1.0, 256);
  const std::vector<SampledFunction> fam{RealFunction::indicator(-0.5, 0.5).sample(g),
                                         RealFunction::indicator(0.0, 1.0).sample(g),
                                         RealFunction::sign().sample(g)};
  const std::vector<double> ts{4, 8, 16, 32};
  const auto rep = tail_decay_check(RealFunction::bump(0.0, 1.0), fam, 2.0, ts, k, TailConfig{});
  return {rep.passed(), "slope " + fmt("%.4f", rep.summary("slope")) + " (target -0.5 +- 0.15), bound violations " +
                            std::to_string(rep.violations())};
}

WitnessConfig small_witness() {
  WitnessConfig cfg;
  cfg.kind = WitnessCase::SmallScale;
  cfg.A1 = 8;
  cfg.A2 = 16;
  cfg.intervals = small_scale_sequence(32.0, 4);
  return cfg;
}

// 8: small-scale witnesses separate for log, collapse for a bump.
Outcome compactness_contrast(double& log_min, double& bump_min, double& asym) {
  const CauchyKernel k(LipschitzCurve::flat());
  const WitnessConfig cfg = small_witness();
  const auto lg = witness_separation(RealFunction::truncated_log(0.0, 1e-12, 1e12), cfg, k);
  const auto bp = witness_separation(RealFunction::bump(0.0, 1.0, 1.0), cfg, k);
  log_min = lg.min_distance;
  bump_min = bp.min_distance;
  asym = 0.0;
  for (const auto* w : {&lg, &bp})
    for (std::size_t i = 0; i < w->distances.size(); ++i)
      for (std::size_t j = 0; j < w->distances.size(); ++j)
        asym = std::max(asym, std::abs(w->distances[i][j] - w->distances[j][i]));
  return {log_min > 10.0 * bump_min,
          "min distance " + fmt("%.4e", log_min) + " (log) vs " + fmt("%.4e", bump_min) + " (bump), ratio " +
              fmt("%.3e", log_min / bump_min)};
}

double rel_gap(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num = std::max(num, std::abs(a[i] - b[i]));
    den = std::max(den, std::abs(b[i]));
  }
  return den > 0 ? num / den : num;
}

std::vector<cplx> values(const SampledFunction& f) { return {f.values().begin(), f.values().end()}; }

// 9: bilinearity, linearity and symmetry.
Outcome algebraic(double distance_asymmetry) {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> n;
  const CauchyKernel k(LipschitzCurve::sawtooth(1.0, 4.0));
  const Grid g = Grid::cell_centered(-1.0, 1.0, 400);
  auto random_f = [&] {
    std::vector<cplx> v(g.count);
    for (auto& x : v) x = cplx(n(rng), n(rng));
    return SampledFunction(g, v);
  };
  const Grid lattice = midpoint_lattice(g, -3.0, 3.0, 0.02);
  double worst = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    const auto f1 = random_f(), f2 = random_f();
    const double a = n(rng), c = n(rng);
    // b linear in closed form: a b1 + c b2 stays linear
    const double s1 = n(rng), i1 = n(rng), s2 = n(rng), i2 = n(rng);
    const auto b1 = RealFunction::linear(s1, i1), b2 = RealFunction::linear(s2, i2);
    const auto bc = RealFunction::linear(a * s1 + c * s2, a * i1 + c * i2);
    const auto g1 = values(apply_commutator(b1, f1, k, lattice));
    const auto g2 = values(apply_commutator(b2, f1, k, lattice));
    const auto gc = values(apply_commutator(bc, f1, k, lattice));
    std::vector<cplx> expect(g1.size());
    for (std::size_t i = 0; i < g1.size(); ++i) expect[i] = a * g1[i] + c * g2[i];
    worst = std::max(worst, rel_gap(gc, expect));
    // piecewise-constant symbols with shared breaks
    const std::vector<double> br{-0.5, 0.1, 0.7};
    std::vector<double> v1, v2, vc;
    for (int i = 0; i < 4; ++i) {
      v1.push_back(n(rng));
      v2.push_back(n(rng));
      vc.push_back(a * v1.back() + c * v2.back());
    }
    const auto p1 = values(apply_commutator(RealFunction::piecewise_constant(br, v1), f1, k, lattice));
    const auto p2 = values(apply_commutator(RealFunction::piecewise_constant(br, v2), f1, k, lattice));
    const auto pc = values(apply_commutator(RealFunction::piecewise_constant(br, vc), f1, k, lattice));
    for (std::size_t i = 0; i < p1.size(); ++i) expect[i] = a * p1[i] + c * p2[i];
    worst = std::max(worst, rel_gap(pc, expect));
    // commutator linear in f
    const cplx za(n(rng), n(rng)), zc(n(rng), n(rng));
    const auto h1 = values(apply_commutator(b1, f1, k, lattice));
    const auto h2 = values(apply_commutator(b1, f2, k, lattice));
    const auto hc = values(apply_commutator(b1, f1.scaled(za) + f2.scaled(zc), k, lattice));
    for (std::size_t i = 0; i < h1.size(); ++i) expect[i] = za * h1[i] + zc * h2[i];
    worst = std::max(worst, rel_gap(hc, expect));
    // principal value linear in f
    const auto cfg = PvConfig::for_grid(g);
    const auto q1 = values(apply_pv(k, f1, lattice, cfg));
    const auto q2 = values(apply_pv(k, f2, lattice, cfg));
    const auto qc = values(apply_pv(k, f1.scaled(za) + f2.scaled(zc), lattice, cfg));
    for (std::size_t i = 0; i < q1.size(); ++i) expect[i] = za * q1[i] + zc * q2[i];
    worst = std::max(worst, rel_gap(qc, expect));
  }
  return {worst <= 1e-12 && distance_asymmetry == 0.0,
          "max relative gap " + fmt("%.3e", worst) + ", distance asymmetry " + fmt("%.1e", distance_asymmetry)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 10: every subcommand twice, byte-compared.
Outcome determinism() {
  const std::vector<std::pair<std::string, std::string>> runs{
      {"verify-kernel", R"({"seed": 5, "threads": 2, "curve": {"kind": "sawtooth", "params": {"amplitude": 1, "period": 4}}, "kernel": {"samples": 20000}})"},
      {"eval-operator", R"({"threads": 2, "grid": {"origin": -1.99, "step": 0.02, "count": 200}, "f": {"kind": "indicator", "params": {"a": -1, "b": 1}}, "eval": {"convergence_points": [2.0]}})"},
      {"bmo-norm", R"({"threads": 2, "grid": {"origin": -1.99, "step": 0.02, "count": 200}, "b": {"kind": "truncated_log"}, "bmo": {"stride": 2}})"},
      {"vmo-profile", R"({"threads": 2, "grid": {"origin": -1.99, "step": 0.02, "count": 200}, "b": {"kind": "truncated_log"}, "bmo": {"stride": 2, "R_ladder": [0.25, 0.5]}})"},
      {"verify-homogeneity", R"({"threads": 2, "curve": {"kind": "affine", "params": {"slope": 1}}, "homogeneity": {"M_ladder": [16, 64], "nodes": 256}})"},
      {"lemma41", R"({"threads": 2, "b": {"kind": "sign"}, "lemma41": {"interval": {"center": 0, "radius": 1}, "k_ladder": [3, 4, 5], "cells": 64, "nodes": 128}})"},
      {"fk-diagnose", R"({"threads": 2, "grid": {"origin": -0.984375, "step": 0.03125, "count": 64}, "b": {"kind": "bump"}, "f": {"kind": "indicator", "params": {"a": -0.5, "b": 0.5}}, "window": {"center": 0, "radius": 4}, "fk": {"shifts": [0, 0.25], "tail_ladder": [4, 8], "cells_per_gap": 16}})"},
      {"witness", R"({"threads": 2, "b": {"kind": "truncated_log"}, "witness": {"length": 3, "nodes_per_radius": 16, "k_ladder": [3, 4], "annulus_cells": 32, "cells_per_gap": 16}})"},
      {"commutator-norm", R"({"threads": 2, "grid": {"origin": -1.98, "step": 0.04, "count": 100}, "b": {"kind": "sign"}, "f": {"kind": "bump"}, "norm": {"scales": [1, 2]}})"},
  };
  const fs::path root = fs::temp_directory_path() / "cauchylab_acceptance_determinism";
  fs::remove_all(root);
  std::size_t files = 0;
  std::string mismatch;
  for (const auto& [cmd, text] : runs) {
    const ExperimentConfig cfg = parse_config(text);
    std::ostringstream log;
    const fs::path a = root / (cmd + "_a"), b = root / (cmd + "_b");
    const int ca = run(cfg, cmd, a.string(), log);
    const int cb = run(cfg, cmd, b.string(), log);
    if (ca != cb || ca == 2) mismatch += " " + cmd + "(exit " + std::to_string(ca) + "/" + std::to_string(cb) + ")";
    for (const auto& e : fs::directory_iterator(a)) {
      ++files;
      const fs::path other = b / e.path().filename();
      if (!fs::exists(other) || slurp(e.path()) != slurp(other)) mismatch += " " + cmd + "/" + e.path().filename().string();
    }
  }
  fs::remove_all(root);
  return {mismatch.empty(), std::to_string(files) + " files compared over 9 subcommands" +
                                (mismatch.empty() ? std::string() : ", differing:" + mismatch)};
}

}  // namespace

int main() {
  int failed = 0;
  auto report = [&](int id, const char* what, double limit, const std::function<Outcome()>& body) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = seconds_since(t0);
    const bool in_time = limit <= 0 || secs < limit;
    const bool pass = o.pass && in_time;
    failed += !pass;
    std::printf("criterion %2d: %s  %s: %s [%.2f s%s]\n", id, pass ? "PASS" : "FAIL", what, o.detail.c_str(), secs,
                limit > 0 ? (in_time ? fmt(" < %g s", limit).c_str() : fmt(" over %g s", limit).c_str()) : "");
    std::fflush(stdout);
  };

  double log_min = 0, bump_min = 0, asym = -1;
  report(1, "kernel standard estimates", 10, kernel_estimates);
  report(2, "flat-curve closed form", 5, flat_closed_form);
  report(3, "homogeneity", 60, homogeneity);
  report(4, "test-function invariants", 30, test_function_invariants);
  report(5, "annulus bounds", 120, annulus);
  report(6, "median equivalence", 0, median_equivalence);
  report(7, "tail decay", 60, tail_decay);
  report(8, "compactness contrast", 180, [&] { return compactness_contrast(log_min, bump_min, asym); });
  report(9, "algebraic exactness", 0, [&] { return algebraic(asym < 0 ? 1.0 : asym); });
  report(10, "determinism", 0, determinism);
  std::printf("%d of 10 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}

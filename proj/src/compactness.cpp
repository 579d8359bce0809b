#include "cauchylab/compactness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cauchylab/commutator.hpp"
#include "cauchylab/error.hpp"
#include "cauchylab/parallel.hpp"
#include "cauchylab/quadrature.hpp"
#include "cauchylab/testfn.hpp"

namespace cauchylab {

namespace {

std::vector<double> sorted_ladder(std::span<const double> ladder, const char* what) {
  if (ladder.empty()) throw InputError(std::string(what) + " ladder must be non-empty");
  std::vector<double> v(ladder.begin(), ladder.end());
  for (double x : v)
    if (!(x > 0) || !std::isfinite(x)) throw InputError(std::string(what) + " ladder entries must be positive");
  std::sort(v.begin(), v.end());
  return v;
}

double tail_norm(const SampledFunction& g, double p, double t) {
  double s = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (std::abs(g.node(i)) > t) s += std::pow(std::abs(g[i]), p);
  return std::pow(g.step() * s, 1.0 / p);
}

}  // namespace

// ---------------------------------------------------------------- FK curves

FkReport fk_diagnose(std::span<const SampledFunction> images, double p, std::span<const double> t_ladder,
                     std::span<const double> z_ladder) {
  if (images.empty()) throw InputError("fk diagnosis needs at least one image");
  if (!(p > 1.0)) throw InputError("L^p exponent must lie in (1, inf)");
  const std::vector<double> ts = sorted_ladder(t_ladder, "tail");
  const std::vector<double> zs = sorted_ladder(z_ladder, "shift");

  FkReport rep;
  for (const auto& g : images) rep.uniform_bound = std::max(rep.uniform_bound, lp_norm(g, p));
  for (double t : ts) {
    double worst = 0.0;
    for (const auto& g : images) worst = std::max(worst, tail_norm(g, p, t));
    rep.tail_curve.emplace_back(t, worst);
  }
  for (double z : zs) {
    double worst = 0.0;
    for (const auto& g : images) worst = std::max(worst, lp_norm(shift(g, z) - g, p));
    rep.equicontinuity_curve.emplace_back(z, worst);
  }
  return rep;
}

BoundReport FkReport::to_report() const {
  BoundReport rep("fk_diagnosis", "sup_g ||g||_{L^p(|x|>t)} <= sup_g ||g||_p; sup_g ||g(.+z) - g||_p <= 2 sup_g ||g||_p",
                  {"curve", "parameter"});
  for (const auto& [t, v] : tail_curve) rep.add({0.0, t}, v, uniform_bound, v <= uniform_bound * (1.0 + 1e-12));
  for (const auto& [z, v] : equicontinuity_curve)
    rep.add({1.0, z}, v, 2.0 * uniform_bound, v <= 2.0 * uniform_bound * (1.0 + 1e-12));
  rep.set_summary("uniform_bound", uniform_bound);
  rep.add_note("curve 0 = tail (parameter t), curve 1 = equicontinuity (parameter |z|)");
  return rep;
}

// ---------------------------------------------------------------- tails

BoundReport tail_decay_check(const RealFunction& b, std::span<const SampledFunction> family, double p,
                             std::span<const double> t_ladder, const CauchyKernel& kernel, const TailConfig& cfg) {
  if (family.empty()) throw InputError("tail check needs a non-empty family");
  if (!(p > 1.0)) throw InputError("L^p exponent must lie in (1, inf)");
  if (!(cfg.R > 0) || !(cfg.window_factor > 0)) throw InputError("tail check needs R > 0 and a positive window");
  const std::vector<double> ts = sorted_ladder(t_ladder, "tail");
  for (double t : ts)
    if (!(t > 2)) throw InputError("tail ladder entries must exceed 2");
  const auto supp = b.support();
  if (!supp || supp->first < -cfg.R * (1.0 + 1e-12) || supp->second > cfg.R * (1.0 + 1e-12))
    throw InputError("symbol b must be supported in I(0, R)");
  const auto bsup = b.sup_norm();
  if (!bsup) throw InputError("symbol b must be bounded");
  if (ts.back() * cfg.R >= cfg.window_factor * cfg.R) throw InputError("tail ladder reaches past the output window");

  const double pp = p / (p - 1.0);
  std::vector<double> tails(ts.size(), 0.0);
  double fmax = 0.0;
  const Interval window(0.0, cfg.window_factor * cfg.R);
  for (const auto& f : family) {
    fmax = std::max(fmax, lp_norm(f, p));
    const IndexRange r = f.support();
    std::vector<Interval> zones{Interval(0.0, cfg.R)};
    if (!r.empty())
      zones.push_back(Interval::from_endpoints(f.node(r.begin) - 0.5 * f.step(), f.node(r.end - 1) + 0.5 * f.step()));
    const PlanValues g = apply_commutator(b, f, kernel, graded_plan(f.grid(), zones, window, cfg.cells_per_gap));
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const double edge = ts[i] * cfg.R;
      const double v = std::pow(lp_power(g, p, [edge](double x) { return std::abs(x) > edge; }), 1.0 / p);
      tails[i] = std::max(tails[i], v);
    }
  }

  BoundReport rep("tail_decay",
                  "sup_f ||[b,C]f||_{L^p(|x|>tR)} <= 2^(2+1/p') / (p-1)^(1/p) ||b||_inf ||f||_p t^(-1/p')",
                  {"t", "R"});
  const double c = std::exp2(2.0 + 1.0 / pp) / std::pow(p - 1.0, 1.0 / p) * *bsup * fmax;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double rhs = c * std::pow(ts[i], -1.0 / pp);
    rep.add({ts[i], cfg.R}, tails[i], rhs, tails[i] <= rhs);
  }
  rep.set_summary("slope_target", -1.0 / pp);
  rep.set_summary("slope_tolerance", cfg.slope_tol);
  rep.set_summary("b_sup", *bsup);
  rep.set_summary("f_norm_max", fmax);
  const bool all_positive = std::all_of(tails.begin(), tails.end(), [](double v) { return v > 0; });
  if (all_positive && ts.size() >= 2) {
    const double slope = loglog_slope(ts, tails);
    rep.set_summary("slope", slope);
    if (std::abs(slope + 1.0 / pp) > cfg.slope_tol)
      rep.fail("tail slope " + format_double(slope) + " outside -1/p' +- tolerance");
  } else {
    rep.add_note("tails vanish or ladder too short; slope not fitted");
  }
  rep.add_note("output window I(0, " + format_double(cfg.window_factor) + " R)");
  return rep;
}

// ---------------------------------------------------------------- witnesses

std::string to_string(WitnessCase c) {
  switch (c) {
    case WitnessCase::SmallScale:
      return "small";
    case WitnessCase::LargeScale:
      return "large";
    case WitnessCase::FarAway:
      return "far";
  }
  return "small";
}

WitnessCase witness_case_from_string(const std::string& s) {
  if (s == "small") return WitnessCase::SmallScale;
  if (s == "large") return WitnessCase::LargeScale;
  if (s == "far") return WitnessCase::FarAway;
  throw InputError("witness case must be small, large or far (got '" + s + "')");
}

void WitnessConfig::validate() const {
  if (!(A1 > 4)) throw InputError("A1 must exceed 4");
  if (!(A2 > A1)) throw InputError("A2 must exceed A1");
  if (!(p > 1.0)) throw InputError("L^p exponent must lie in (1, inf)");
  if (intervals.empty()) throw InputError("witness sequence must be non-empty");
  if (nodes_per_radius < 2) throw InputError("witness grids need at least two nodes per radius");
  if (k_ladder.empty()) throw InputError("witness k ladder must be non-empty");
  for (std::size_t l = 0; l + 1 < intervals.size(); ++l) {
    const double ratio = intervals[l + 1].measure() / intervals[l].measure();
    if (kind == WitnessCase::SmallScale && !(ratio < 1.0 / A2))
      throw InputError("small-scale sequence: |I_" + std::to_string(l + 1) + "| / |I_" + std::to_string(l) +
                       "| must be below 1/A2");
    if (kind == WitnessCase::LargeScale && !(1.0 / ratio < 1.0 / A2))
      throw InputError("large-scale sequence: |I_" + std::to_string(l) + "| / |I_" + std::to_string(l + 1) +
                       "| must be below 1/A2");
  }
  if (kind == WitnessCase::FarAway)
    for (std::size_t l = 0; l < intervals.size(); ++l)
      for (std::size_t m = l + 1; m < intervals.size(); ++m)
        if (intervals[l].dilate(A2).intersects(intervals[m].dilate(A2)))
          throw InputError("far-away sequence: A2-dilates of intervals " + std::to_string(l) + " and " +
                           std::to_string(m) + " intersect");
}

std::vector<Interval> small_scale_sequence(double ratio, std::size_t length) {
  if (!(ratio > 1)) throw InputError("sequence ratio must exceed 1");
  std::vector<Interval> out;
  for (std::size_t l = 1; l <= length; ++l) out.emplace_back(0.0, std::pow(ratio, -static_cast<double>(l)));
  return out;
}

std::vector<Interval> large_scale_sequence(double ratio, std::size_t length) {
  if (!(ratio > 1)) throw InputError("sequence ratio must exceed 1");
  std::vector<Interval> out;
  for (std::size_t l = 1; l <= length; ++l) out.emplace_back(0.0, std::pow(ratio, static_cast<double>(l)));
  return out;
}

std::vector<Interval> far_away_sequence(double A2, double C_eps, double radius, double R1, std::size_t length) {
  if (!(radius > 0) || !(radius < C_eps)) throw InputError("far-away radius must lie in (0, C_eps)");
  if (!(R1 >= 0) || !(A2 > 0)) throw InputError("far-away sequence needs R1 >= 0 and A2 > 0");
  std::vector<Interval> out;
  double R = R1;
  for (std::size_t l = 0; l < length; ++l) {
    const Interval I(R + radius, radius);
    out.push_back(I);
    R = std::abs(I.center()) + 4.0 * A2 * C_eps;
  }
  return out;
}

BoundReport WitnessReport::to_report(const WitnessConfig& cfg) const {
  BoundReport rep("witness_separation", "||[b,C]f_i - [b,C]f_j||_p <= ||[b,C]f_i||_p + ||[b,C]f_j||_p",
                  {"i", "j"});
  for (std::size_t i = 0; i < distances.size(); ++i)
    for (std::size_t j = i + 1; j < distances.size(); ++j) {
      const double rhs = image_norms[i] + image_norms[j];
      rep.add({static_cast<double>(i), static_cast<double>(j)}, distances[i][j], rhs,
              distances[i][j] <= rhs * (1.0 + 1e-12));
    }
  rep.set_summary("min_distance", min_distance);
  rep.set_summary("epsilon", epsilon);
  rep.set_summary("C1", C1);
  rep.set_summary("C2", C2);
  rep.set_summary("A1", cfg.A1);
  rep.set_summary("A2", cfg.A2);
  rep.set_summary("A3", A3);
  rep.set_summary("A3_root_p", std::pow(A3, 1.0 / cfg.p));
  rep.set_summary("suggested_A2", suggested_A2);
  rep.set_summary("p", cfg.p);
  rep.add_note("case " + to_string(cfg.kind) + ", " + std::to_string(cfg.intervals.size()) +
               " intervals; separation is certified for this finite prefix only");
  return rep;
}

WitnessReport witness_separation(const RealFunction& b, const WitnessConfig& cfg, const CauchyKernel& kernel) {
  cfg.validate();
  const std::size_t n = cfg.intervals.size();
  std::vector<TestFunction> tfs;
  tfs.reserve(n);
  WitnessReport rep;
  double h_min = std::numeric_limits<double>::infinity();
  double extent = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const Interval& I = cfg.intervals[j];
    try {
      tfs.push_back(build_test_function(b, I, cfg.p, 2 * cfg.nodes_per_radius));
    } catch (const InputError& e) {
      throw InputError("witness interval " + std::to_string(j) + ": " + e.what());
    }
    if (!(tfs.back().epsilon > cfg.min_oscillation))
      throw InputError("witness interval " + std::to_string(j) + ": oscillation " +
                       format_double(tfs.back().epsilon) + " does not exceed the threshold");
    rep.epsilons.push_back(tfs.back().epsilon);
    h_min = std::min(h_min, tfs.back().f.step());
    extent = std::max(extent, std::abs(I.center()) + I.radius());
  }

  // Evaluation cells sit at quarter offsets of the finest step, away from the
  // nodes of every test-function grid.
  const Grid reference{0.25 * h_min, h_min, 1};
  const EvalPlan plan = graded_plan(reference, cfg.intervals, Interval(0.0, cfg.window_factor * extent),
                                    cfg.cells_per_gap);
  std::vector<PlanValues> images;
  images.reserve(n);
  for (const auto& tf : tfs) images.push_back(apply_commutator(b, tf.f, kernel, plan));

  rep.distances.assign(n, std::vector<double>(n, 0.0));
  rep.min_distance = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    rep.image_norms.push_back(lp_norm(images[i], cfg.p));
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = lp_norm(images[i] - images[j], cfg.p);
      rep.distances[i][j] = rep.distances[j][i] = d;
      rep.min_distance = std::min(rep.min_distance, d);
    }
  }
  if (n < 2) rep.min_distance = 0.0;

  const AnnulusConfig acfg{cfg.A1, cfg.annulus_cells};
  rep.C1 = std::numeric_limits<double>::infinity();
  rep.C2 = 0.0;
  for (const auto& tf : tfs) {
    const AnnulusLadder lad = annulus_ladder(b, tf, cfg.k_ladder, kernel, acfg);
    rep.C1 = std::min(rep.C1, lad.min_lower_scaled);
    rep.C2 = std::max(rep.C2, lad.max_upper);
  }
  rep.epsilon = *std::min_element(rep.epsilons.begin(), rep.epsilons.end());
  rep.A3 = std::pow(8.0, 1.0 - cfg.p) * rep.C1 * std::pow(rep.epsilon, cfg.p) * std::pow(cfg.A1, 1.0 - cfg.p);

  // smallest 2^m > A1 with 2^{m(p-1)} > 2 C2 / ((1 - 2^{1-p}) A3)
  rep.suggested_A2 = std::numeric_limits<double>::infinity();
  if (rep.A3 > 0) {
    const double need = std::log2(2.0 * rep.C2 / ((1.0 - std::exp2(1.0 - cfg.p)) * rep.A3));
    for (int m = static_cast<int>(std::floor(std::log2(cfg.A1))) + 1; m <= 1023; ++m)
      if (m * (cfg.p - 1.0) > need) {
        rep.suggested_A2 = std::ldexp(1.0, m);
        break;
      }
  }
  return rep;
}

// ---------------------------------------------------------------- L1..L4

EquicontinuityTerms equicontinuity_terms(const RealFunction& b, const SampledFunction& f, const CauchyKernel& kernel,
                                         double z, double split, const Grid& lattice, double p) {
  if (!(split > 0) || !(split < 0.5)) throw InputError("split parameter must lie in (0, 1/2)");
  if (z == 0.0 || !std::isfinite(z)) throw InputError("shift z must be non-zero");
  if (!(p > 1.0)) throw InputError("L^p exponent must lie in (1, inf)");
  lattice.validate();
  const Grid& g = f.grid();
  const double zq = z / g.step;
  if (std::abs(zq - std::round(zq)) > 1e-9 * std::max(1.0, std::abs(zq)))
    throw InputError("shift must be a whole number of grid steps; regrid so that z / h is an integer");
  const double zs = std::round(zq) * g.step;
  std::vector<KernelPoint> at_x, at_xz;
  for (std::size_t i = 0; i < lattice.count; ++i) {
    at_x.push_back(kernel_point(kernel, g, lattice.node(i)));
    if (!at_x.back().half) throw InputError("equicontinuity lattice must be aligned with the input grid");
    at_xz.push_back(kernel_point(kernel, g, at_x.back().x + zs));
    if (!at_xz.back().half) throw InputError("shifted lattice point is not aligned; z must be a grid multiple");
  }
  const QuadSource src = make_source(kernel, f, b);
  const double radius = std::abs(zs) / split;

  const std::size_t n = lattice.count;
  std::vector<cplx> L1(n), L2(n), L3(n), L4(n);
  std::vector<double> ident_err(n), ident_tol(n), l1_rhs(n), l2_rhs(n);
  std::vector<double> ladder;
  for (double t = radius; t <= 1e6 * radius; t *= 2.0) ladder.push_back(t);

  parallel_for(n, [&](std::size_t i) {
    const KernelPoint& kx = at_x[i];
    const KernelPoint& kz = at_xz[i];
    const long long c2 = *kx.half;
    const double bx = b(kx.x);
    const double bz = b(kz.x);
    const cplx far_plain = sum_band(kernel, src, kx, c2, radius, false, 1.0, 0.0);
    L1[i] = (bx - bz) * far_plain;
    L2[i] = sum_band(kernel, src, kx, c2, radius, false, bz, 1.0) - sum_band(kernel, src, kz, c2, radius, false, bz, 1.0);
    L3[i] = sum_band(kernel, src, kx, c2, radius, true, bx, 1.0);
    L4[i] = -sum_band(kernel, src, kz, c2, radius, true, bz, 1.0);
    const cplx gx = sum_all(kernel, src, kx, bx, 1.0);
    const cplx gz = sum_all(kernel, src, kz, bz, 1.0);
    const cplx total = L1[i] + L2[i] + L3[i] + L4[i];
    ident_err[i] = std::abs(total - (gx - gz));
    ident_tol[i] = 1e-10 * (std::abs(L1[i]) + std::abs(L2[i]) + std::abs(L3[i]) + std::abs(L4[i]) + std::abs(gx) +
                            std::abs(gz) + std::abs(bx - bz) * std::abs(far_plain)) +
                   1e-300;
    double cmax = 0.0;
    for (double t : ladder) cmax = std::max(cmax, std::abs(sum_outside(kernel, src, kx, t)));
    l1_rhs[i] = std::abs(bx - bz) * cmax;
    l2_rhs[i] = smoothness_majorant(kernel, src, c2, radius, zs, bz, 1.0);
  });

  EquicontinuityTerms out;
  out.z = zs;
  out.split = split;
  out.report = BoundReport("equicontinuity_terms",
                           "check 0: |L1+L2+L3+L4 - (g(x)-g(x+z))| <= 1e-10 * magnitudes; "
                           "check 1: |L1| <= |b(x)-b(x+z)| C*f(x); "
                           "check 2: |L2| <= h sum 2(L+1)|z|/|y-x|^2 |b(x+z)-b(y)||f(y)|",
                           {"x", "check"});
  double worst_ident = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = at_x[i].x;
    out.report.add({x, 0.0}, ident_err[i], ident_tol[i], ident_err[i] <= ident_tol[i]);
    const double a1 = std::abs(L1[i]);
    out.report.add({x, 1.0}, a1, l1_rhs[i], a1 <= l1_rhs[i] * (1.0 + 1e-12));
    const double a2 = std::abs(L2[i]);
    out.report.add({x, 2.0}, a2, l2_rhs[i], a2 <= l2_rhs[i] * (1.0 + 1e-9));
    worst_ident = std::max(worst_ident, ident_err[i] / (ident_tol[i] * 1e10));
  }
  const std::vector<cplx>* terms[4] = {&L1, &L2, &L3, &L4};
  for (int t = 0; t < 4; ++t) {
    double s = 0.0;
    for (const auto& v : *terms[t]) s += std::pow(std::abs(v), p);
    out.norms[t] = std::pow(lattice.step * s, 1.0 / p);
  }
  out.f_norm = lp_norm(f, p);
  const double ratio = std::abs(zs) / split;
  out.l2_constant = out.f_norm > 0 ? out.norms[1] / (split * out.f_norm) : 0.0;
  out.l3_constant = out.f_norm > 0 ? out.norms[2] / (ratio * out.f_norm) : 0.0;
  out.l4_constant = out.f_norm > 0 ? out.norms[3] / (ratio * out.f_norm) : 0.0;
  out.report.set_summary("z", zs);
  out.report.set_summary("split", split);
  out.report.set_summary("split_radius", radius);
  for (int t = 0; t < 4; ++t) out.report.set_summary("norm_L" + std::to_string(t + 1), out.norms[t]);
  out.report.set_summary("f_norm", out.f_norm);
  out.report.set_summary("L2_over_split_f", out.l2_constant);
  out.report.set_summary("L3_over_ratio_f", out.l3_constant);
  out.report.set_summary("L4_over_ratio_f", out.l4_constant);
  out.report.set_summary("max_relative_identity_error", worst_ident);
  out.report.add_note("norms are taken over the evaluation lattice only");
  return out;
}

}  // namespace cauchylab

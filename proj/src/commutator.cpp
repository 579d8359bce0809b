#include "cauchylab/commutator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cauchylab/error.hpp"
#include "cauchylab/parallel.hpp"
#include "cauchylab/quadrature.hpp"

namespace cauchylab {

namespace {

std::vector<cplx> commutator_points(const RealFunction& b, const SampledFunction& f, const CauchyKernel& kernel,
                                    const std::vector<double>& xs) {
  const QuadSource src = make_source(kernel, f, b);
  std::vector<cplx> out(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) {
    const KernelPoint kp = kernel_point(kernel, f.grid(), xs[i]);
    out[i] = sum_all(kernel, src, kp, b(kp.x), 1.0);
  });
  return out;
}

RealFunction shared_symbol(const SampledFunction& b, const SampledFunction& f) {
  if (!same_grid(b.grid(), f.grid())) throw InputError("symbol b and input f must share a grid");
  return RealFunction::sampled(b);
}

}  // namespace

cplx commutator_at(const RealFunction& b, const SampledFunction& f, const CauchyKernel& kernel, double x) {
  const QuadSource src = make_source(kernel, f, b);
  const KernelPoint kp = kernel_point(kernel, f.grid(), x);
  return sum_all(kernel, src, kp, b(kp.x), 1.0);
}

PlanValues apply_commutator(const RealFunction& b, const SampledFunction& f, const CauchyKernel& kernel,
                            const EvalPlan& plan) {
  return split_by_plan(plan, commutator_points(b, f, kernel, plan.points()));
}

SampledFunction apply_commutator(const RealFunction& b, const SampledFunction& f, const CauchyKernel& kernel,
                                 const Grid& lattice) {
  lattice.validate();
  std::vector<double> xs(lattice.count);
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = lattice.node(i);
  return SampledFunction(lattice, commutator_points(b, f, kernel, xs));
}

SampledFunction apply_commutator(const SampledFunction& b, const SampledFunction& f, const CauchyKernel& kernel,
                                 const Grid& lattice) {
  return apply_commutator(shared_symbol(b, f), f, kernel, lattice);
}

PlanValues apply_commutator(const SampledFunction& b, const SampledFunction& f, const CauchyKernel& kernel,
                            const EvalPlan& plan) {
  return apply_commutator(shared_symbol(b, f), f, kernel, plan);
}

// ---------------------------------------------------------------- homogeneity

HomogeneityCase HomogeneityCase::make(const LipschitzCurve& curve, double M, double r, double x0) {
  if (!(M > 0) || !(r > 0)) throw InputError("homogeneity case needs M > 0 and r > 0");
  HomogeneityCase hc;
  hc.M = M;
  hc.r = r;
  hc.I0 = Interval(x0, r);
  hc.I1 = Interval(x0 + 1.2 * (M + 1.0) * r, r);
  hc.curve = curve;
  hc.validate();
  return hc;
}

void HomogeneityCase::validate() const {
  if (!(M > 10)) throw InputError("homogeneity case needs M > 10");
  if (I0.intersects(I1)) throw InputError("homogeneity intervals must be disjoint");
  const double lo = std::max(I1.left() - I0.right(), I0.left() - I1.right());
  const double hi = std::max(I1.right() - I0.left(), I0.right() - I1.left());
  const double tol = 1e-12 * M * r;
  if (lo < M * r - tol || hi > 2.0 * M * r + tol)
    throw InputError("homogeneity intervals must be between M r and 2 M r apart");
}

HomogeneityResult homogeneity_value(const HomogeneityCase& hc, const HomogeneityConfig& cfg) {
  hc.validate();
  if (cfg.nodes == 0 || cfg.eval_points == 0) throw InputError("homogeneity sweep needs nodes and points");
  const CauchyKernel kernel(hc.curve);
  const Grid g = Grid::cell_centered(hc.I1.left(), hc.I1.right(), cfg.nodes);
  const SampledFunction chi = SampledFunction::sample(g, [](double) { return 1.0; });
  const QuadSource src = make_source(kernel, chi);
  const double w = hc.I0.measure() / static_cast<double>(cfg.eval_points);
  std::vector<double> mods(cfg.eval_points);
  parallel_for(cfg.eval_points, [&](std::size_t i) {
    const double x = hc.I0.left() + (static_cast<double>(i) + 0.5) * w;
    mods[i] = std::abs(sum_all(kernel, src, kernel_point(kernel, g, x), 1.0, 0.0));
  });
  HomogeneityResult res;
  const double L = hc.curve.lipschitz_constant();
  res.raw_min = *std::min_element(mods.begin(), mods.end());
  res.adjusted_min = std::numbers::pi * res.raw_min;
  res.target = 2.0 / ((L * L + 1.0) * hc.M);
  res.pass = res.adjusted_min >= cfg.slack * res.target;
  res.raw_pass = res.raw_min >= cfg.slack * res.target;
  return res;
}

namespace {

BoundReport homogeneity_report() {
  return BoundReport("homogeneity", "pi * min_{x in I0} |C chi_I1(x)| >= slack * 2 / ((L^2 + 1) M)",
                     {"M", "L", "r", "raw_min", "raw_pass"});
}

void add_row(BoundReport& rep, const HomogeneityCase& hc, const HomogeneityConfig& cfg, const HomogeneityResult& res) {
  // lhs is the measured quantity, rhs the threshold it must reach
  rep.add({hc.M, hc.curve.lipschitz_constant(), hc.r, res.raw_min, res.raw_pass ? 1.0 : 0.0}, res.adjusted_min,
          cfg.slack * res.target, res.pass);
}

}  // namespace

BoundReport homogeneity_check(const HomogeneityCase& hc, const HomogeneityConfig& cfg) {
  const HomogeneityResult res = homogeneity_value(hc, cfg);
  BoundReport rep = homogeneity_report();
  add_row(rep, hc, cfg, res);
  rep.set_summary("adjusted_min", res.adjusted_min);
  rep.set_summary("raw_min", res.raw_min);
  rep.set_summary("target", res.target);
  rep.set_summary("slack", cfg.slack);
  rep.add_note("window: distances between I0 and I1 lie in [M r, 2 M r]");
  rep.add_note("lhs is compared from below: the row passes when lhs >= rhs");
  return rep;
}

BoundReport homogeneity_ladder(const LipschitzCurve& curve, std::span<const double> M_ladder,
                               const HomogeneityConfig& cfg, double slope_tol) {
  if (M_ladder.size() < 2) throw InputError("homogeneity ladder needs at least two values of M");
  BoundReport rep = homogeneity_report();
  std::vector<double> Ms, mins;
  bool raw_all = true;
  for (double M : M_ladder) {
    const HomogeneityCase hc = HomogeneityCase::make(curve, M);
    const HomogeneityResult res = homogeneity_value(hc, cfg);
    add_row(rep, hc, cfg, res);
    Ms.push_back(M);
    mins.push_back(res.adjusted_min);
    raw_all = raw_all && res.raw_pass;
  }
  const double slope = loglog_slope(Ms, mins);
  rep.set_summary("slope", slope);
  rep.set_summary("slope_target", -1.0);
  rep.set_summary("slope_tolerance", slope_tol);
  rep.set_summary("slack", cfg.slack);
  rep.set_summary("raw_all_pass", raw_all ? 1.0 : 0.0);
  rep.add_note("curve " + curve.describe());
  rep.add_note("window: distances between I0 and I1 lie in [M r, 2 M r]");
  rep.add_note("lhs is compared from below: the row passes when lhs >= rhs");
  if (std::abs(slope + 1.0) > slope_tol) rep.fail("log-log slope " + format_double(slope) + " outside -1 +- tolerance");
  return rep;
}

NormEstimate commutator_norm_lower(const RealFunction& b, double p, std::span<const SampledFunction> family,
                                   const CauchyKernel& kernel, const Interval& window, int cells_per_gap) {
  if (family.empty()) throw InputError("commutator norm needs a non-empty family");
  NormEstimate est;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const SampledFunction& f = family[i];
    const double nf = lp_norm(f, p);
    if (!(nf > 0)) throw InputError("family member " + std::to_string(i) + " has zero norm");
    const PlanValues g = apply_commutator(b, f, kernel, output_plan(f, window, cells_per_gap));
    const double ratio = lp_norm(g, p) / nf;
    est.ratios.push_back(ratio);
    if (i == 0 || ratio > est.value) {
      est.value = ratio;
      est.argmax = i;
    }
  }
  return est;
}

}  // namespace cauchylab

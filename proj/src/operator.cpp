#include "cauchylab/operator.hpp"

#include <algorithm>
#include <cmath>

#include "cauchylab/error.hpp"
#include "cauchylab/parallel.hpp"

namespace cauchylab {

PvConfig PvConfig::for_grid(const Grid& grid, double steps, Exclusion mode) {
  grid.validate();
  if (!(steps >= 1.0)) throw InputError("pv truncation must be at least one grid step");
  return PvConfig{steps * grid.step, grid.step, mode};
}

void PvConfig::validate() const {
  if (!(quadrature_step > 0) || !std::isfinite(quadrature_step)) throw InputError("pv quadrature step must be positive");
  if (!(truncation > 0) || !std::isfinite(truncation)) throw InputError("pv truncation must be positive");
  if (truncation < quadrature_step * (1.0 - 1e-12)) throw InputError("pv truncation must be at least the quadrature step");
}

namespace {

void check_step(const PvConfig& cfg, const SampledFunction& f) {
  cfg.validate();
  if (std::abs(cfg.quadrature_step - f.step()) > 1e-9 * f.step())
    throw InputError("pv quadrature step does not match the input grid; resample f");
}

long long window_half_steps(const PvConfig& cfg) {
  return static_cast<long long>(std::floor(2.0 * cfg.truncation / cfg.quadrature_step + 1e-9));
}

KernelPoint aligned_point(const CauchyKernel& kernel, const Grid& grid, double x) {
  KernelPoint kp = kernel_point(kernel, grid, x);
  if (!kp.half) throw InputError("evaluation point is not a grid node or midpoint; use the midpoint lattice");
  return kp;
}

std::vector<cplx> pv_points(const CauchyKernel& kernel, const SampledFunction& f, const std::vector<double>& xs,
                            const PvConfig& cfg) {
  check_step(cfg, f);
  std::vector<KernelPoint> kps;
  kps.reserve(xs.size());
  for (double x : xs) kps.push_back(aligned_point(kernel, f.grid(), x));
  const QuadSource src = make_source(kernel, f);
  const long long kt2 = window_half_steps(cfg);
  std::vector<cplx> out(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) { out[i] = sum_pv(kernel, src, kps[i], kt2, cfg.exclusion); });
  return out;
}

}  // namespace

cplx apply_truncated(const CauchyKernel& kernel, const SampledFunction& f, double x, double t) {
  if (!(t > 0) || !std::isfinite(t)) throw InputError("truncation radius must be positive");
  const QuadSource src = make_source(kernel, f);
  return sum_outside(kernel, src, kernel_point(kernel, f.grid(), x), t);
}

cplx apply_pv(const CauchyKernel& kernel, const SampledFunction& f, double x, const PvConfig& cfg) {
  check_step(cfg, f);
  const KernelPoint kp = aligned_point(kernel, f.grid(), x);
  return sum_pv(kernel, make_source(kernel, f), kp, window_half_steps(cfg), cfg.exclusion);
}

SampledFunction apply_pv(const CauchyKernel& kernel, const SampledFunction& f, const Grid& lattice,
                         const PvConfig& cfg) {
  lattice.validate();
  std::vector<double> xs(lattice.count);
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = lattice.node(i);
  return SampledFunction(lattice, pv_points(kernel, f, xs, cfg));
}

PlanValues apply_pv(const CauchyKernel& kernel, const SampledFunction& f, const EvalPlan& plan, const PvConfig& cfg) {
  const std::vector<cplx> v = pv_points(kernel, f, plan.points(), cfg);
  return split_by_plan(plan, v);
}

double apply_maximal(const CauchyKernel& kernel, const SampledFunction& f, double x, std::span<const double> ladder) {
  if (ladder.empty()) throw InputError("maximal operator needs a non-empty truncation ladder");
  if (!std::is_sorted(ladder.begin(), ladder.end())) throw InputError("truncation ladder must be sorted");
  for (double t : ladder)
    if (!(t > 0) || !std::isfinite(t)) throw InputError("truncation ladder entries must be positive");
  const QuadSource src = make_source(kernel, f);
  const KernelPoint kp = kernel_point(kernel, f.grid(), x);
  double best = 0.0;
  for (double t : ladder) best = std::max(best, std::abs(sum_outside(kernel, src, kp, t)));
  return best;
}

EvalPlan output_plan(const SampledFunction& f, const Interval& window, int cells_per_gap) {
  const IndexRange r = f.support();
  std::vector<Interval> zones;
  if (!r.empty()) {
    const double h = f.step();
    zones.push_back(Interval::from_endpoints(f.node(r.begin) - 0.5 * h, f.node(r.end - 1) + 0.5 * h));
  }
  return graded_plan(f.grid(), zones, window, cells_per_gap);
}

NormEstimate operator_norm_lower(const CauchyKernel& kernel, double p, std::span<const SampledFunction> family,
                                 const Interval& window, Exclusion mode, int cells_per_gap) {
  if (family.empty()) throw InputError("operator norm needs a non-empty family");
  NormEstimate est;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const SampledFunction& f = family[i];
    const double nf = lp_norm(f, p);
    if (!(nf > 0)) throw InputError("family member " + std::to_string(i) + " has zero norm");
    const PlanValues g = apply_pv(kernel, f, output_plan(f, window, cells_per_gap), PvConfig::for_grid(f.grid(), 1.0, mode));
    const double ratio = lp_norm(g, p) / nf;
    est.ratios.push_back(ratio);
    if (i == 0 || ratio > est.value) {
      est.value = ratio;
      est.argmax = i;
    }
  }
  return est;
}

std::vector<ConvergenceRow> convergence_study(const CauchyKernel& kernel, const RealFunction& f, double lo, double hi,
                                              std::size_t cells, std::span<const double> points, Exclusion mode) {
  if (points.empty()) throw InputError("convergence study needs evaluation points");
  std::vector<ConvergenceRow> rows(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) rows[i].x = points[i];
  for (int level = 0; level < 3; ++level) {
    const Grid g = Grid::cell_centered(lo, hi, cells << level);
    const SampledFunction fs = f.sample(g);
    for (double x : points) {
      const auto half = half_index(g, x);
      if (!half || (level == 0 && (*half & 1LL) == 0))
        throw InputError("convergence points must be cell boundaries of the coarse grid");
    }
    const std::vector<cplx> v = pv_points(kernel, fs, std::vector<double>(points.begin(), points.end()),
                                          PvConfig::for_grid(g, 1.0, mode));
    for (std::size_t i = 0; i < points.size(); ++i) (level == 0 ? rows[i].coarse : level == 1 ? rows[i].middle : rows[i].fine) = v[i];
  }
  for (auto& r : rows) {
    const double den = std::abs(r.middle - r.fine);
    r.richardson = den > 0 ? std::abs(r.coarse - r.middle) / den : 0.0;
  }
  return rows;
}

}  // namespace cauchylab

#include "cauchylab/testfn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cauchylab/bmo.hpp"
#include "cauchylab/commutator.hpp"
#include "cauchylab/error.hpp"
#include "cauchylab/parallel.hpp"
#include "cauchylab/quadrature.hpp"

namespace cauchylab {

TestFunction build_test_function(const SampledFunction& b, const Interval& I, double p) {
  if (!(p > 1.0) || !std::isfinite(p)) throw InputError("test function exponent must lie in (1, inf)");
  const IndexRange r = nodes_in(b.grid(), I);
  if (r.empty()) throw InputError("base interval contains no node of the symbol grid");
  const double eps = mean_oscillation(b, I);
  if (!(eps > 0)) throw InputError("symbol b is constant on the base interval; no test function exists");
  const MedianResult m = median(b, I);

  TestFunction tf;
  tf.base = I;
  tf.p = p;
  tf.epsilon = eps;
  tf.median = m.value;
  tf.upper_mask.assign(b.size(), false);
  tf.lower_mask.assign(b.size(), false);
  long long n1 = 0, n2 = 0;
  for (std::size_t i = r.begin; i < r.end; ++i) {
    const double v = b[i].real();
    if (v > m.value) {
      tf.upper_mask[i] = true;
      ++n1;
    } else if (v < m.value) {
      tf.lower_mask[i] = true;
      ++n2;
    }
  }
  const auto n = static_cast<double>(r.size());
  tf.a = static_cast<double>(n1 - n2) / n;
  const double s = std::pow(I.measure(), -1.0 / p);
  std::vector<cplx> v(b.size(), cplx{});
  for (std::size_t i = r.begin; i < r.end; ++i) {
    const double chi = tf.upper_mask[i] ? 1.0 : (tf.lower_mask[i] ? -1.0 : 0.0);
    v[i] = s * (chi - tf.a);
  }
  tf.f = SampledFunction(b.grid(), std::move(v));
  return tf;
}

TestFunction build_test_function(const RealFunction& b, const Interval& I, double p, std::size_t nodes) {
  if (nodes < 2) throw InputError("test function grid needs at least two nodes");
  const Grid g = Grid::cell_centered(I.left(), I.right(), nodes);
  return build_test_function(b.sample(g), I, p);
}

BoundReport audit_test_function(const TestFunction& tf, const SampledFunction& b) {
  if (!same_grid(tf.f.grid(), b.grid())) throw InputError("audit needs b on the test function grid");
  BoundReport rep("test_function_invariants", "construction invariants of the annulus test function",
                  {"invariant"});
  const SampledFunction& f = tf.f;
  const double s = std::pow(tf.base.measure(), -1.0 / tf.p);

  rep.add({0}, std::abs(tf.a), 0.5 + 1e-12, std::abs(tf.a) <= 0.5 + 1e-12);

  double outside = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f[i] != cplx{} && !tf.base.contains(f.node(i))) outside += 1.0;
  rep.add({1}, outside, 0.0, outside == 0.0);

  cplx total{};
  for (std::size_t i = 0; i < f.size(); ++i) total += f[i];
  const double mean_err = std::abs(f.step() * total);
  const double mean_tol = 1e-10 * std::pow(tf.base.measure(), 1.0 - 1.0 / tf.p);
  rep.add({2}, mean_err, mean_tol, mean_err <= mean_tol);

  double worst_sign = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (tf.base.contains(f.node(i))) worst_sign = std::max(worst_sign, -f[i].real() * (b[i].real() - tf.median));
  rep.add({3}, worst_sign, 1e-12, worst_sign <= 1e-12);

  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!tf.upper_mask[i] && !tf.lower_mask[i]) continue;
    const double q = std::abs(f[i]) / s;
    lo = std::min(lo, q);
    hi = std::max(hi, q);
  }
  if (hi == 0.0) lo = 0.0;
  // band [1/2, 5/2] in units of |I|^{-1/p}; relative rounding slack 1e-12
  rep.add({4}, 0.5, lo * (1.0 + 1e-12), 0.5 <= lo * (1.0 + 1e-12));
  rep.add({5}, hi, 2.5, hi <= 2.5);

  rep.set_summary("a", tf.a);
  rep.set_summary("epsilon", tf.epsilon);
  rep.set_summary("median", tf.median);
  rep.set_summary("p", tf.p);
  rep.add_note("invariants: 0 |a|<=1/2, 1 support, 2 mean zero, 3 f(b-alpha)>=0, 4-5 band on the masks");
  return rep;
}

namespace {

void require_k(int k, const AnnulusConfig& cfg) {
  if (!(cfg.A1 > 4)) throw InputError("A1 must exceed 4");
  if (cfg.cells == 0) throw InputError("annulus needs at least one evaluation cell");
  const int k0 = static_cast<int>(std::floor(std::log2(cfg.A1)));
  if (k < k0) throw InputError("annulus index k must be at least floor(log2 A1) = " + std::to_string(k0));
}

void require_inside_symbol(const RealFunction& b, double lo, double hi) {
  const SampledFunction* s = b.samples();
  if (!s) return;
  const Grid& g = s->grid();
  const double eps = 1e-9 * g.step;
  if (lo < g.front() - 0.5 * g.step - eps || hi > g.back() + 0.5 * g.step + eps)
    throw InputError("annulus lies outside the grid window of the sampled symbol");
}

Grid cells_over(double lo, double hi, std::size_t cells) {
  const double w = (hi - lo) / static_cast<double>(cells);
  return Grid{lo + 0.5 * w, w, cells};
}

AnnulusBoundReport finish(int k, AnnulusSide side, double lhs, const TestFunction& tf) {
  AnnulusBoundReport r;
  r.k = k;
  r.side = side;
  r.lhs = lhs;
  r.normalizer = std::exp2(-static_cast<double>(k) * (tf.p - 1.0));
  r.ratio = lhs / r.normalizer;
  r.scaled_ratio = r.ratio / std::pow(tf.epsilon, tf.p);
  return r;
}

}  // namespace

AnnulusBoundReport verify_annulus_lower(const RealFunction& b, const TestFunction& tf, int k,
                                        const CauchyKernel& kernel, const AnnulusConfig& cfg) {
  require_k(k, cfg);
  const Interval ann = Annulus{tf.base, k}.as_interval();
  require_inside_symbol(b, ann.left(), ann.right());
  const EvalPlan plan = uniform_plan(cells_over(ann.left(), ann.right(), cfg.cells));
  const PlanValues g = apply_commutator(b, tf.f, kernel, plan);
  return finish(k, AnnulusSide::Lower, lp_power(g, tf.p), tf);
}

AnnulusBoundReport verify_annulus_upper(const RealFunction& b, const TestFunction& tf, int k,
                                        const CauchyKernel& kernel, const AnnulusConfig& cfg) {
  require_k(k, cfg);
  const double x = tf.base.center();
  const double near = std::ldexp(tf.base.radius(), k);
  const double far = 2.0 * near;
  require_inside_symbol(b, x - far, x + far);
  EvalPlan plan;
  plan.pieces.push_back(cells_over(x - far, x - near, cfg.cells));
  plan.pieces.push_back(cells_over(x + near, x + far, cfg.cells));
  const PlanValues g = apply_commutator(b, tf.f, kernel, plan);
  return finish(k, AnnulusSide::Upper, lp_power(g, tf.p), tf);
}

bool AnnulusLadder::passed(double lower_limit, double upper_limit) const {
  return !lower.empty() && lower_spread <= lower_limit && upper_spread <= upper_limit;
}

BoundReport AnnulusLadder::to_report(double lower_limit, double upper_limit) const {
  BoundReport rep("annulus_ladder",
                  "lower: ratio/eps^p <= " + format_double(lower_limit) + " * min_k; upper: ratio <= " +
                      format_double(upper_limit) + " * min_k; ratio = int |[b,C]f|^p / 2^(-k(p-1))",
                  {"k", "side", "integral", "normalizer", "ratio"});
  for (const auto& r : lower) {
    const double rhs = lower_limit * min_lower_scaled;
    rep.add({static_cast<double>(r.k), 0.0, r.lhs, r.normalizer, r.ratio}, r.scaled_ratio, rhs, r.scaled_ratio <= rhs);
  }
  double min_upper = std::numeric_limits<double>::infinity();
  for (const auto& r : upper) min_upper = std::min(min_upper, r.ratio);
  for (const auto& r : upper) {
    const double rhs = upper_limit * min_upper;
    rep.add({static_cast<double>(r.k), 1.0, r.lhs, r.normalizer, r.ratio}, r.ratio, rhs, r.ratio <= rhs);
  }
  rep.set_summary("lower_spread", lower_spread);
  rep.set_summary("upper_spread", upper_spread);
  rep.set_summary("empirical_C1", min_lower_scaled);
  rep.set_summary("empirical_C2", max_upper);
  rep.add_note("side 0 = annulus I^k (lower bound), side 1 = shell 2^(k+1) I minus 2^k I (upper bound)");
  if (!passed(lower_limit, upper_limit)) rep.fail("ratios are not stable across the k ladder");
  return rep;
}

AnnulusLadder annulus_ladder(const RealFunction& b, const TestFunction& tf, std::span<const int> ks,
                             const CauchyKernel& kernel, const AnnulusConfig& cfg) {
  if (ks.empty()) throw InputError("k ladder must be non-empty");
  AnnulusLadder lad;
  for (int k : ks) {
    lad.lower.push_back(verify_annulus_lower(b, tf, k, kernel, cfg));
    lad.upper.push_back(verify_annulus_upper(b, tf, k, kernel, cfg));
  }
  auto spread = [](const std::vector<AnnulusBoundReport>& rs, bool scaled, double& mn, double& mx) {
    mn = std::numeric_limits<double>::infinity();
    mx = 0.0;
    for (const auto& r : rs) {
      const double v = scaled ? r.scaled_ratio : r.ratio;
      mn = std::min(mn, v);
      mx = std::max(mx, v);
    }
    return mn > 0 ? mx / mn : std::numeric_limits<double>::infinity();
  };
  double mn = 0.0, mx = 0.0;
  lad.lower_spread = spread(lad.lower, true, mn, mx);
  lad.min_lower_scaled = mn;
  lad.upper_spread = spread(lad.upper, false, mn, mx);
  lad.max_upper = mx;
  return lad;
}

IntermediateBounds verify_intermediate_bounds(const RealFunction& b, const TestFunction& tf, int k,
                                              const CauchyKernel& kernel, const IntermediateConfig& cfg) {
  if (k < 1) throw InputError("intermediate bounds need k >= 1");
  if (cfg.points == 0 || cfg.nodes < 2) throw InputError("intermediate bounds need points and nodes");
  const Interval ann = Annulus{tf.base, k}.as_interval();
  require_inside_symbol(b, tf.base.center() - std::ldexp(tf.base.radius(), k + 1),
                        tf.base.center() + std::ldexp(tf.base.radius(), k + 1));

  IntermediateBounds out{
      BoundReport("intermediate_pointwise",
                  "|(b(y)-alpha) C f(y)| <= " + format_double(cfg.slack) +
                      " * 2(L+1) r |I|^(1/p') |b(y)-alpha| / |x-y|^2 on I^k",
                  {"y", "b_minus_alpha"}),
      BoundReport("median_drift", "|alpha(2^(k+1) I) - alpha(I)| <= 3 (k+1) bmo(b)", {"k", "bmo"}),
  };

  // (i) pointwise majorant on the annulus
  const QuadSource src = make_source(kernel, tf.f);
  const Grid pts = cells_over(ann.left(), ann.right(), cfg.points);
  std::vector<cplx> cf(cfg.points);
  parallel_for(cfg.points, [&](std::size_t i) {
    cf[i] = sum_all(kernel, src, kernel_point(kernel, tf.f.grid(), pts.node(i)), 1.0, 0.0);
  });
  const double r = tf.base.radius();
  const double pp = tf.p / (tf.p - 1.0);
  const double scale =
      kernel.size_constant() * std::abs(kernel.prefactor()) * r * std::pow(tf.base.measure(), 1.0 / pp);
  double worst = 0.0;
  for (std::size_t i = 0; i < cfg.points; ++i) {
    const double y = pts.node(i);
    const double db = b(y) - tf.median;
    const double d = y - tf.base.center();
    const double lhs = std::abs(db * cf[i]);
    const double rhs = cfg.slack * scale * std::abs(db) / (d * d);
    out.pointwise.add({y, db}, lhs, rhs, lhs <= rhs);
    if (rhs > 0) worst = std::max(worst, lhs / rhs);
  }
  out.pointwise.set_summary("k", k);
  out.pointwise.set_summary("max_ratio", worst);

  // (ii) median drift against the oscillation over the dilates 2^i I
  auto sampled_on = [&](const Interval& J) { return b.sample(Grid::cell_centered(J.left(), J.right(), cfg.nodes)); };
  double bmo = 0.0;
  for (int i = 0; i <= k + 1; ++i) {
    const Interval J = tf.base.dilate(std::ldexp(1.0, i));
    bmo = std::max(bmo, mean_oscillation(sampled_on(J), J));
  }
  const Interval big = tf.base.dilate(std::ldexp(1.0, k + 1));
  const double a0 = median(sampled_on(tf.base), tf.base).value;
  const double a1 = median(sampled_on(big), big).value;
  const double drift = std::abs(a1 - a0);
  const double rhs = 3.0 * (k + 1) * bmo;
  out.median_drift.add({static_cast<double>(k), bmo}, drift, rhs, drift <= rhs);
  out.median_drift.set_summary("drift", drift);
  out.median_drift.set_summary("bmo_lower_bound", bmo);
  out.median_drift.set_summary("empirical_constant", bmo > 0 ? drift / ((k + 1) * bmo) : 0.0);
  return out;
}

}  // namespace cauchylab

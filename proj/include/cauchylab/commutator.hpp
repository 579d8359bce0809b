#pragma once

#include <span>
#include <vector>

#include "cauchylab/functions.hpp"
#include "cauchylab/kernel.hpp"
#include "cauchylab/operator.hpp"
#include "cauchylab/report.hpp"
#include "cauchylab/sampling.hpp"

namespace cauchylab {

// [b, C] f (x) = b(x) (C f)(x) - C(b f)(x), summed in the fused form
// h sum K(x, y_j) (b(x) - b(y_j)) f(y_j). Evaluation points off the input
// nodes need not be aligned because the fused integrand has no 1/(y - x)
// singularity for Lipschitz b.

cplx commutator_at(const RealFunction& b, const SampledFunction& f, const CauchyKernel& kernel, double x);

PlanValues apply_commutator(const RealFunction& b, const SampledFunction& f, const CauchyKernel& kernel,
                            const EvalPlan& plan);
SampledFunction apply_commutator(const RealFunction& b, const SampledFunction& f, const CauchyKernel& kernel,
                                 const Grid& lattice);
/// b given by samples on the grid of f. Between nodes b is read as the mean
/// of the two neighbouring cells.
SampledFunction apply_commutator(const SampledFunction& b, const SampledFunction& f, const CauchyKernel& kernel,
                                 const Grid& lattice);
PlanValues apply_commutator(const SampledFunction& b, const SampledFunction& f, const CauchyKernel& kernel,
                            const EvalPlan& plan);

/// I0 = I(x0, r), I1 = I(x0 + 1.2 (M + 1) r, r), so every distance between
/// the two intervals lies in [M r, 2 M r] once M >= 4.
struct HomogeneityCase {
  double M = 0.0;
  double r = 1.0;
  Interval I0{0.0, 1.0};
  Interval I1{0.0, 1.0};
  LipschitzCurve curve = LipschitzCurve::flat();

  static HomogeneityCase make(const LipschitzCurve& curve, double M, double r = 1.0, double x0 = 0.0);
  /// Throws InputError unless M > 10 and all distances lie in [M r, 2 M r].
  void validate() const;
};

struct HomogeneityConfig {
  std::size_t nodes = 2048;
  std::size_t eval_points = 64;
  double slack = 0.9;
};

struct HomogeneityResult {
  double raw_min = 0.0;
  double adjusted_min = 0.0;
  double target = 0.0;
  bool pass = false;
  bool raw_pass = false;
};

/// min over points of I0 of |C chi_I1|, raw and times pi, against
/// 2 / ((L^2 + 1) M) with the configured slack.
HomogeneityResult homogeneity_value(const HomogeneityCase& hc, const HomogeneityConfig& cfg);
BoundReport homogeneity_check(const HomogeneityCase& hc, const HomogeneityConfig& cfg);

/// One row per M, plus the log-log slope of the adjusted minimum. Fails
/// when any row fails or the slope leaves -1 +- slope_tol.
BoundReport homogeneity_ladder(const LipschitzCurve& curve, std::span<const double> M_ladder,
                               const HomogeneityConfig& cfg, double slope_tol = 0.1);

/// max over the family of ||[b, C] f||_p / ||f||_p over `window`.
NormEstimate commutator_norm_lower(const RealFunction& b, double p, std::span<const SampledFunction> family,
                                   const CauchyKernel& kernel, const Interval& window, int cells_per_gap = 64);

}  // namespace cauchylab

#pragma once

#include <span>
#include <vector>

#include "cauchylab/functions.hpp"
#include "cauchylab/kernel.hpp"
#include "cauchylab/quadrature.hpp"
#include "cauchylab/sampling.hpp"

namespace cauchylab {

/// Discretisation of the principal value. `truncation` is the half-width
/// of the window summed in mirrored pairs; it must be at least one step.
struct PvConfig {
  double truncation = 0.0;
  double quadrature_step = 0.0;
  Exclusion exclusion = Exclusion::SymmetricPair;

  /// Defaults for a grid: truncation of `steps` grid steps.
  static PvConfig for_grid(const Grid& grid, double steps = 1.0, Exclusion mode = Exclusion::SymmetricPair);
  void validate() const;
};

/// h sum_{|x - y_j| > t} K(x, y_j) f(y_j). x may be anywhere; t > 0.
cplx apply_truncated(const CauchyKernel& kernel, const SampledFunction& f, double x, double t);

/// Principal value at a node or midpoint x of the input grid.
cplx apply_pv(const CauchyKernel& kernel, const SampledFunction& f, double x, const PvConfig& cfg);
/// Principal value at every point of an aligned lattice (parallel over points).
SampledFunction apply_pv(const CauchyKernel& kernel, const SampledFunction& f, const Grid& lattice,
                         const PvConfig& cfg);
PlanValues apply_pv(const CauchyKernel& kernel, const SampledFunction& f, const EvalPlan& plan, const PvConfig& cfg);

/// max over the ladder of |apply_truncated(t)|. The ladder must be
/// non-empty, positive and sorted.
double apply_maximal(const CauchyKernel& kernel, const SampledFunction& f, double x, std::span<const double> ladder);

/// Output plan for an input: graded cells over `window`, fine near the
/// input support.
EvalPlan output_plan(const SampledFunction& f, const Interval& window, int cells_per_gap = 64);

struct NormEstimate {
  double value = 0.0;
  std::size_t argmax = 0;
  std::vector<double> ratios;
};

/// Lower bound for the L^p operator norm: max over the family of
/// ||C f||_p / ||f||_p, the output norm taken over `window`.
NormEstimate operator_norm_lower(const CauchyKernel& kernel, double p, std::span<const SampledFunction> family,
                                 const Interval& window, Exclusion mode = Exclusion::SymmetricPair,
                                 int cells_per_gap = 64);

struct ConvergenceRow {
  double x = 0.0;
  cplx coarse, middle, fine;
  /// |coarse - middle| / |middle - fine|; about 4 for second-order errors.
  double richardson = 0.0;
};

/// Samples f on cell-centred grids of `cells`, 2 cells and 4 cells over
/// [lo, hi) and evaluates the principal value at the given points, which
/// must be cell boundaries of the coarse grid.
std::vector<ConvergenceRow> convergence_study(const CauchyKernel& kernel, const RealFunction& f, double lo, double hi,
                                              std::size_t cells, std::span<const double> points,
                                              Exclusion mode = Exclusion::SymmetricPair);

}  // namespace cauchylab

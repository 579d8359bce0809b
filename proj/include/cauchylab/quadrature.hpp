#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cauchylab/functions.hpp"
#include "cauchylab/kernel.hpp"
#include "cauchylab/sampling.hpp"

namespace cauchylab {

/// How the singular window of a principal value is summed.
enum class Exclusion { SymmetricPair, NodeSkip };

/// Input samples prepared for repeated kernel sums. Only the support
/// [first, last) of the input is kept; curve heights are cached per node.
struct QuadSource {
  Grid grid;
  std::size_t first = 0;
  std::size_t last = 0;
  std::vector<double> heights;
  std::vector<cplx> values;
  /// b(y_j) f(y_j); empty unless built for a commutator.
  std::vector<cplx> weighted;

  bool empty() const { return last <= first; }
};

QuadSource make_source(const CauchyKernel& kernel, const SampledFunction& f);
QuadSource make_source(const CauchyKernel& kernel, const SampledFunction& f, const RealFunction& b);

/// Evaluation point. When x is a node or a midpoint of the input grid,
/// `half` holds its half index and offsets y_j - x are formed from integers,
/// so mirrored nodes give exactly opposite offsets.
struct KernelPoint {
  double x = 0.0;
  double height = 0.0;
  std::optional<long long> half;
};

KernelPoint kernel_point(const CauchyKernel& kernel, const Grid& grid, double x);

/// h sum K(x, y_j) (alpha u_j - gamma w_j) over nodes with y_j != x.
cplx sum_all(const CauchyKernel& kernel, const QuadSource& src, const KernelPoint& kp, cplx alpha, cplx gamma);

/// h sum K(x, y_j) u_j over nodes with |y_j - x| > t.
cplx sum_outside(const CauchyKernel& kernel, const QuadSource& src, const KernelPoint& kp, double t);

/// Principal value with truncation window given in half steps (kt2 = 2t/h).
/// Nodes farther than the window are summed plainly. Inside it,
/// SymmetricPair adds the mirrored terms K(x,x+s)u(x+s) + K(x,x-s)u(x-s)
/// together; NodeSkip sums them one by one. The node at x is never used.
/// Needs an aligned kernel point.
cplx sum_pv(const CauchyKernel& kernel, const QuadSource& src, const KernelPoint& kp, long long kt2, Exclusion mode);

/// Band sum: h sum K(x, y_j) (alpha u_j - gamma w_j) over nodes with
/// |y_j - c| <= radius (inside) or > radius (outside), where c is a grid node
/// or midpoint given by its half index. The kernel point may differ from c.
cplx sum_band(const CauchyKernel& kernel, const QuadSource& src, const KernelPoint& kp, long long center_half,
              double radius, bool inside, cplx alpha, cplx gamma);

/// h sum 2(L+1) |z| / |y_j - c|^2 |alpha u_j - gamma w_j| over the band
/// |y_j - c| > radius. Majorant for the difference of two band sums whose
/// kernel points are c and c + z.
double smoothness_majorant(const CauchyKernel& kernel, const QuadSource& src, long long center_half, double radius,
                           double z, cplx alpha, cplx gamma);

}  // namespace cauchylab

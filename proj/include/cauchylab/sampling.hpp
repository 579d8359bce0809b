#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cauchylab {

using cplx = std::complex<double>;

/// The open interval I(x, r) = (x - r, x + r).
class Interval {
 public:
  Interval(double center, double radius);
  static Interval from_endpoints(double left, double right);

  double center() const { return center_; }
  double radius() const { return radius_; }
  double measure() const { return 2.0 * radius_; }
  double left() const { return center_ - radius_; }
  double right() const { return center_ + radius_; }

  /// kI: same centre, radius scaled by k.
  Interval dilate(double k) const;
  /// I + y.
  Interval translate(double y) const;
  bool contains(double x) const { return x > left() && x < right(); }
  bool intersects(const Interval& other) const;

  bool operator==(const Interval&) const = default;

 private:
  double center_;
  double radius_;
};

/// I_j^k = (x_j + 2^k r_j, x_j + 2^{k+1} r_j).
struct Annulus {
  Interval base;
  int k;

  Interval as_interval() const;
};

/// Uniform grid: node(i) = origin + i * step, i in [0, count).
struct Grid {
  double origin = 0.0;
  double step = 1.0;
  std::size_t count = 0;

  double node(std::size_t i) const { return origin + static_cast<double>(i) * step; }
  double front() const { return origin; }
  double back() const { return node(count - 1); }
  void validate() const;

  /// Cell-centred grid of `cells` nodes tiling [left, right).
  static Grid cell_centered(double left, double right, std::size_t cells);
};

bool same_grid(const Grid& a, const Grid& b);

/// 2 (x - origin) / step when x is a grid node (even) or a midpoint between
/// nodes (odd), within a 1e-9 relative snap; nullopt otherwise.
std::optional<long long> half_index(const Grid& grid, double x);

/// Half-open index range [begin, end).
struct IndexRange {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t size() const { return end > begin ? end - begin : 0; }
  bool empty() const { return end <= begin; }
};

/// Nodes lying strictly inside the open interval.
IndexRange nodes_in(const Grid& grid, const Interval& interval);

/// Complex samples of a function on a uniform grid. Real-valued data keep
/// zero imaginary parts.
class SampledFunction {
 public:
  SampledFunction() = default;
  SampledFunction(Grid grid, std::vector<cplx> values);

  static SampledFunction zeros(const Grid& grid);
  static SampledFunction sample(const Grid& grid, const std::function<double(double)>& fn);
  static SampledFunction sample_complex(const Grid& grid, const std::function<cplx(double)>& fn);

  const Grid& grid() const { return grid_; }
  std::span<const cplx> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double node(std::size_t i) const { return grid_.node(i); }
  const cplx& operator[](std::size_t i) const { return values_[i]; }
  double step() const { return grid_.step; }

  /// Smallest range containing every non-zero sample (empty if f == 0).
  IndexRange support() const;

  SampledFunction scaled(cplx factor) const;
  /// Pointwise product with another function on the same grid.
  SampledFunction times(const SampledFunction& other) const;

  friend SampledFunction operator+(const SampledFunction& a, const SampledFunction& b);
  friend SampledFunction operator-(const SampledFunction& a, const SampledFunction& b);

 private:
  Grid grid_;
  std::vector<cplx> values_;
};

struct DomainNorm {
  double value = 0.0;
  /// Set when the domain contained no grid node.
  bool empty_domain = false;
};

/// (h sum |f|^p)^(1/p) over the whole grid. p must exceed 1.
double lp_norm(const SampledFunction& f, double p);
/// Same, restricted to nodes inside `domain`.
DomainNorm lp_norm(const SampledFunction& f, double p, const Interval& domain);
/// h sum |f|^p (no root).
double lp_power(const SampledFunction& f, double p);

/// g(x) = f(x + z) on the same grid, zero-extended. z must be a multiple of
/// the step.
SampledFunction shift(const SampledFunction& f, double z);

/// Evaluation points for operator outputs: cells tiling a window whose
/// centres sit on midpoints of `grid`, so no evaluation point coincides with
/// an input node. Each piece is a uniform Grid whose step is the cell width.
struct EvalPlan {
  std::vector<Grid> pieces;

  std::size_t size() const;
  std::vector<double> points() const;
};

/// Output samples matching an EvalPlan, one SampledFunction per piece.
struct PlanValues {
  std::vector<SampledFunction> pieces;

  std::size_t size() const;
  PlanValues scaled(cplx factor) const;
  friend PlanValues operator-(const PlanValues& a, const PlanValues& b);
};

PlanValues split_by_plan(const EvalPlan& plan, std::span<const cplx> values);
double lp_norm(const PlanValues& g, double p);
double lp_power(const PlanValues& g, double p);
/// Restricted to points satisfying `keep`.
double lp_power(const PlanValues& g, double p, const std::function<bool(double)>& keep);

/// Uniform midpoint lattice covering [lo, hi] with cells of roughly
/// `target_step` (defaults to the grid step). The window is widened outward
/// by at most one cell when its length is not a whole number of cells.
Grid midpoint_lattice(const Grid& grid, double lo, double hi, double target_step = 0.0);

/// Midpoint lattice strictly inside the interval (cells may not cross it).
Grid midpoint_lattice_inside(const Grid& grid, const Interval& interval);

/// Plan over `window` that is fine near each zone and coarsens
/// geometrically away from them: breakpoints at the zone ends and at
/// zone-radius * 2^m outward; every gap gets about `cells_per_gap` cells.
EvalPlan graded_plan(const Grid& reference, std::span<const Interval> zones, const Interval& window,
                     int cells_per_gap = 64);

/// Single-piece plan.
EvalPlan uniform_plan(const Grid& lattice);

/// CSV with columns x, re, im (one header line).
void write_csv(std::ostream& out, const SampledFunction& f);
SampledFunction read_csv(std::istream& in);
SampledFunction read_csv_file(const std::string& path);
void write_csv_file(const std::string& path, const SampledFunction& f);

}  // namespace cauchylab

#include "cauchylab/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "cauchylab/error.hpp"
#include "cauchylab/report.hpp"

namespace cauchylab {

namespace {

constexpr double kSnap = 1e-9;

double snap_tolerance(double v) { return kSnap * std::max(1.0, std::abs(v)); }

void require_p(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) throw InputError("L^p exponent must lie in (1, inf)");
}

}  // namespace

// ---------------------------------------------------------------- Interval

Interval::Interval(double center, double radius) : center_(center), radius_(radius) {
  if (!std::isfinite(center) || !std::isfinite(radius) || !(radius > 0))
    throw InputError("interval needs a finite centre and a positive radius");
}

Interval Interval::from_endpoints(double left, double right) {
  return Interval(0.5 * (left + right), 0.5 * (right - left));
}

Interval Interval::dilate(double k) const { return Interval(center_, k * radius_); }

Interval Interval::translate(double y) const { return Interval(center_ + y, radius_); }

bool Interval::intersects(const Interval& other) const {
  return left() < other.right() && other.left() < right();
}

Interval Annulus::as_interval() const {
  if (k < 1) throw InputError("annulus index k must be at least 1");
  const double scale = std::ldexp(1.0, k);
  return Interval::from_endpoints(base.center() + scale * base.radius(), base.center() + 2.0 * scale * base.radius());
}

// ---------------------------------------------------------------- Grid

void Grid::validate() const {
  if (!std::isfinite(origin) || !std::isfinite(step) || !(step > 0))
    throw InputError("grid needs a finite origin and a positive step");
  if (count == 0) throw InputError("grid needs at least one node");
}

Grid Grid::cell_centered(double left, double right, std::size_t cells) {
  if (!(right > left) || cells == 0) throw InputError("cell-centred grid needs left < right and cells > 0");
  const double h = (right - left) / static_cast<double>(cells);
  return Grid{left + 0.5 * h, h, cells};
}

bool same_grid(const Grid& a, const Grid& b) {
  if (a.count != b.count) return false;
  const double tol = 1e-12 * std::max(std::abs(a.step), std::abs(b.step));
  return std::abs(a.step - b.step) <= tol &&
         std::abs(a.origin - b.origin) <= 1e-9 * a.step + 1e-15 * std::abs(a.origin);
}

std::optional<long long> half_index(const Grid& grid, double x) {
  const double v = 2.0 * (x - grid.origin) / grid.step;
  const double r = std::round(v);
  if (std::abs(v - r) > snap_tolerance(v)) return std::nullopt;
  return static_cast<long long>(r);
}

IndexRange nodes_in(const Grid& grid, const Interval& interval) {
  const double a = (interval.left() - grid.origin) / grid.step;
  const double b = (interval.right() - grid.origin) / grid.step;
  double first = std::round(a);
  first = std::abs(a - first) <= snap_tolerance(a) ? first + 1.0 : std::ceil(a);
  double last = std::round(b);
  last = std::abs(b - last) <= snap_tolerance(b) ? last : std::floor(b) + 1.0;  // exclusive
  const double n = static_cast<double>(grid.count);
  first = std::clamp(first, 0.0, n);
  last = std::clamp(last, 0.0, n);
  return IndexRange{static_cast<std::size_t>(first), static_cast<std::size_t>(std::max(first, last))};
}

// ---------------------------------------------------------------- SampledFunction

SampledFunction::SampledFunction(Grid grid, std::vector<cplx> values) : grid_(grid), values_(std::move(values)) {
  grid_.validate();
  if (values_.size() != grid_.count) throw InputError("sample count does not match grid count");
  for (const auto& v : values_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw InputError("sampled values must be finite");
}

SampledFunction SampledFunction::zeros(const Grid& grid) {
  return SampledFunction(grid, std::vector<cplx>(grid.count, cplx{}));
}

SampledFunction SampledFunction::sample(const Grid& grid, const std::function<double(double)>& fn) {
  grid.validate();
  std::vector<cplx> v(grid.count);
  for (std::size_t i = 0; i < grid.count; ++i) v[i] = fn(grid.node(i));
  return SampledFunction(grid, std::move(v));
}

SampledFunction SampledFunction::sample_complex(const Grid& grid, const std::function<cplx(double)>& fn) {
  grid.validate();
  std::vector<cplx> v(grid.count);
  for (std::size_t i = 0; i < grid.count; ++i) v[i] = fn(grid.node(i));
  return SampledFunction(grid, std::move(v));
}

IndexRange SampledFunction::support() const {
  std::size_t first = 0;
  while (first < values_.size() && values_[first] == cplx{}) ++first;
  if (first == values_.size()) return {};
  std::size_t last = values_.size();
  while (last > first && values_[last - 1] == cplx{}) --last;
  return {first, last};
}

SampledFunction SampledFunction::scaled(cplx factor) const {
  std::vector<cplx> v(values_);
  for (auto& x : v) x *= factor;
  return SampledFunction(grid_, std::move(v));
}

SampledFunction SampledFunction::times(const SampledFunction& other) const {
  if (!same_grid(grid_, other.grid_)) throw InputError("pointwise product needs a shared grid");
  std::vector<cplx> v(values_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = values_[i] * other.values_[i];
  return SampledFunction(grid_, std::move(v));
}

SampledFunction operator+(const SampledFunction& a, const SampledFunction& b) {
  if (!same_grid(a.grid_, b.grid_)) throw InputError("sum needs a shared grid");
  std::vector<cplx> v(a.values_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.values_[i] + b.values_[i];
  return SampledFunction(a.grid_, std::move(v));
}

SampledFunction operator-(const SampledFunction& a, const SampledFunction& b) {
  if (!same_grid(a.grid_, b.grid_)) throw InputError("difference needs a shared grid");
  std::vector<cplx> v(a.values_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.values_[i] - b.values_[i];
  return SampledFunction(a.grid_, std::move(v));
}

// ---------------------------------------------------------------- norms

double lp_power(const SampledFunction& f, double p) {
  require_p(p);
  double s = 0.0;
  for (const auto& v : f.values()) s += std::pow(std::abs(v), p);
  return f.step() * s;
}

double lp_norm(const SampledFunction& f, double p) { return std::pow(lp_power(f, p), 1.0 / p); }

DomainNorm lp_norm(const SampledFunction& f, double p, const Interval& domain) {
  require_p(p);
  const IndexRange r = nodes_in(f.grid(), domain);
  if (r.empty()) return DomainNorm{0.0, true};
  double s = 0.0;
  for (std::size_t i = r.begin; i < r.end; ++i) s += std::pow(std::abs(f[i]), p);
  return DomainNorm{std::pow(f.step() * s, 1.0 / p), false};
}

SampledFunction shift(const SampledFunction& f, double z) {
  const double q = z / f.step();
  const double m = std::round(q);
  if (std::abs(q - m) > snap_tolerance(q))
    throw InputError("shift must be a whole number of grid steps; regrid so that z / h is an integer");
  const auto n = static_cast<long long>(f.size());
  const auto off = static_cast<long long>(m);
  std::vector<cplx> v(f.size(), cplx{});
  for (long long i = 0; i < n; ++i) {
    const long long src = i + off;
    if (src >= 0 && src < n) v[static_cast<std::size_t>(i)] = f[static_cast<std::size_t>(src)];
  }
  return SampledFunction(f.grid(), std::move(v));
}

// ---------------------------------------------------------------- plans

std::size_t EvalPlan::size() const {
  std::size_t n = 0;
  for (const auto& g : pieces) n += g.count;
  return n;
}

std::vector<double> EvalPlan::points() const {
  std::vector<double> pts;
  pts.reserve(size());
  for (const auto& g : pieces)
    for (std::size_t i = 0; i < g.count; ++i) pts.push_back(g.node(i));
  return pts;
}

std::size_t PlanValues::size() const {
  std::size_t n = 0;
  for (const auto& f : pieces) n += f.size();
  return n;
}

PlanValues PlanValues::scaled(cplx factor) const {
  PlanValues out;
  for (const auto& f : pieces) out.pieces.push_back(f.scaled(factor));
  return out;
}

PlanValues operator-(const PlanValues& a, const PlanValues& b) {
  if (a.pieces.size() != b.pieces.size()) throw InputError("plan values come from different plans");
  PlanValues out;
  for (std::size_t i = 0; i < a.pieces.size(); ++i) out.pieces.push_back(a.pieces[i] - b.pieces[i]);
  return out;
}

PlanValues split_by_plan(const EvalPlan& plan, std::span<const cplx> values) {
  if (values.size() != plan.size()) throw InputError("value count does not match plan size");
  PlanValues out;
  std::size_t at = 0;
  for (const auto& g : plan.pieces) {
    out.pieces.emplace_back(g, std::vector<cplx>(values.begin() + static_cast<std::ptrdiff_t>(at),
                                                 values.begin() + static_cast<std::ptrdiff_t>(at + g.count)));
    at += g.count;
  }
  return out;
}

double lp_power(const PlanValues& g, double p) {
  double s = 0.0;
  for (const auto& f : g.pieces) s += lp_power(f, p);
  return s;
}

double lp_norm(const PlanValues& g, double p) { return std::pow(lp_power(g, p), 1.0 / p); }

double lp_power(const PlanValues& g, double p, const std::function<bool(double)>& keep) {
  require_p(p);
  double s = 0.0;
  for (const auto& f : g.pieces) {
    double piece = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
      if (keep(f.node(i))) piece += std::pow(std::abs(f[i]), p);
    s += f.step() * piece;
  }
  return s;
}

Grid midpoint_lattice(const Grid& grid, double lo, double hi, double target_step) {
  grid.validate();
  if (!(hi > lo)) throw InputError("evaluation window needs lo < hi");
  const double h = grid.step;
  long long lo2 = static_cast<long long>(std::floor(2.0 * (lo - grid.origin) / h + kSnap));
  long long hi2 = static_cast<long long>(std::ceil(2.0 * (hi - grid.origin) / h - kSnap));
  if (((hi2 - lo2) & 1LL) != 0) ++hi2;
  if (hi2 <= lo2) hi2 = lo2 + 2;
  const long long width = (hi2 - lo2) / 2;  // in steps
  // Node boundaries need odd strides, midpoint boundaries even ones.
  const bool node_bounded = (lo2 & 1LL) == 0;
  const long long min_stride = node_bounded ? 1 : 2;
  long long s = target_step > 0 ? std::max<long long>(1, std::llround(target_step / h)) : 1;
  if (node_bounded != ((s & 1LL) == 1)) ++s;
  s = std::max(s, min_stride);
  long long chosen = 0;
  for (long long d = 0; d <= s && chosen == 0; d += 2) {
    for (long long cand : {s - d, s + d})
      if (cand >= min_stride && width % cand == 0) {
        chosen = cand;
        break;
      }
  }
  long long cells;
  if (chosen != 0) {
    s = chosen;
    cells = width / s;
  } else {
    cells = (width + s - 1) / s;
  }
  Grid out;
  out.origin = grid.origin + static_cast<double>(lo2 + s) * 0.5 * h;
  out.step = static_cast<double>(s) * h;
  out.count = static_cast<std::size_t>(cells);
  return out;
}

Grid midpoint_lattice_inside(const Grid& grid, const Interval& interval) {
  const double h = grid.step;
  long long lo2 = static_cast<long long>(std::ceil(2.0 * (interval.left() - grid.origin) / h - kSnap));
  long long hi2 = static_cast<long long>(std::floor(2.0 * (interval.right() - grid.origin) / h + kSnap));
  if (lo2 & 1LL) ++lo2;
  if (hi2 & 1LL) --hi2;
  if (hi2 <= lo2) throw InputError("interval is narrower than one grid cell");
  Grid out;
  out.origin = grid.origin + static_cast<double>(lo2 + 1) * 0.5 * h;
  out.step = h;
  out.count = static_cast<std::size_t>((hi2 - lo2) / 2);
  return out;
}

EvalPlan graded_plan(const Grid& reference, std::span<const Interval> zones, const Interval& window,
                     int cells_per_gap) {
  reference.validate();
  if (cells_per_gap < 1) throw InputError("cells_per_gap must be positive");
  const double h = reference.step;
  auto to_node = [&](double x) { return static_cast<long long>(std::llround((x - reference.origin) / h)); };

  std::vector<long long> cuts{to_node(window.left()), to_node(window.right())};
  for (const auto& z : zones) {
    for (double edge : {z.left(), z.right()})
      if (window.contains(edge)) cuts.push_back(to_node(edge));
    for (double d = z.radius(); z.right() + d < window.right(); d *= 2.0) cuts.push_back(to_node(z.right() + d));
    for (double d = z.radius(); z.left() - d > window.left(); d *= 2.0) cuts.push_back(to_node(z.left() - d));
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  EvalPlan plan;
  auto cell_piece = [&](long long start, long long stride, long long count) {
    Grid g;
    g.origin = reference.origin + (static_cast<double>(start) + 0.5 * static_cast<double>(stride)) * h;
    g.step = static_cast<double>(stride) * h;
    g.count = static_cast<std::size_t>(count);
    plan.pieces.push_back(g);
  };
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const long long a = cuts[i];
    const long long width = cuts[i + 1] - a;
    long long s = std::max<long long>(1, width / cells_per_gap);
    if ((s & 1LL) == 0) --s;
    const long long full = width / s;
    cell_piece(a, s, full);
    long long at = a + full * s;
    long long rem = width - full * s;
    while (rem > 0) {
      const long long t = (rem & 1LL) ? rem : rem - 1;
      cell_piece(at, t, 1);
      at += t;
      rem -= t;
    }
  }
  return plan;
}

EvalPlan uniform_plan(const Grid& lattice) {
  lattice.validate();
  return EvalPlan{{lattice}};
}

// ---------------------------------------------------------------- CSV

void write_csv(std::ostream& out, const SampledFunction& f) {
  out << "x,re,im\n";
  for (std::size_t i = 0; i < f.size(); ++i)
    out << format_double(f.node(i)) << ',' << format_double(f[i].real()) << ',' << format_double(f[i].imag())
        << '\n';
}

SampledFunction read_csv(std::istream& in) {
  std::vector<double> xs;
  std::vector<cplx> vs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() < 2) throw InputError("csv line " + std::to_string(line_no) + ": expected x,re[,im]");
    double x, re, im = 0.0;
    try {
      std::size_t used = 0;
      x = std::stod(cells[0], &used);
      re = std::stod(cells[1]);
      if (cells.size() > 2) im = std::stod(cells[2]);
    } catch (const std::exception&) {
      if (xs.empty()) continue;  // header
      throw InputError("csv line " + std::to_string(line_no) + ": not numeric");
    }
    xs.push_back(x);
    vs.emplace_back(re, im);
  }
  if (xs.size() < 2) throw InputError("csv needs at least two samples");
  const double h = (xs.back() - xs.front()) / static_cast<double>(xs.size() - 1);
  if (!(h > 0)) throw InputError("csv abscissae must be strictly increasing");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double expect = xs[0] + static_cast<double>(i) * h;
    if (std::abs(xs[i] - expect) > 1e-6 * h)
      throw InputError("csv row " + std::to_string(i) + ": grid is not uniform");
  }
  return SampledFunction(Grid{xs[0], h, xs.size()}, std::move(vs));
}

SampledFunction read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open csv '" + path + "'");
  return read_csv(in);
}

void write_csv_file(const std::string& path, const SampledFunction& f) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  write_csv(out, f);
}

}  // namespace cauchylab

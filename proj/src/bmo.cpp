#include "cauchylab/bmo.hpp"

#include <algorithm>
#include <cmath>

#include "cauchylab/error.hpp"
#include "cauchylab/parallel.hpp"

namespace cauchylab {

namespace {

IndexRange require_nodes(const SampledFunction& f, const Interval& I) {
  const IndexRange r = nodes_in(f.grid(), I);
  if (r.empty()) throw InputError("interval contains no grid node");
  return r;
}

double mean_over(const SampledFunction& f, IndexRange r) {
  double s = 0.0;
  for (std::size_t i = r.begin; i < r.end; ++i) s += f[i].real();
  return s / static_cast<double>(r.size());
}

double deviation_over(const SampledFunction& f, IndexRange r, double c) {
  double s = 0.0;
  for (std::size_t i = r.begin; i < r.end; ++i) s += std::abs(f[i].real() - c);
  return s / static_cast<double>(r.size());
}

void require_ladder(std::span<const double> ladder, const char* what) {
  if (ladder.empty()) throw InputError(std::string(what) + " ladder must be non-empty");
  for (double v : ladder)
    if (!(v > 0) || !std::isfinite(v)) throw InputError(std::string(what) + " ladder entries must be positive");
}

}  // namespace

double average(const SampledFunction& f, const Interval& I) { return mean_over(f, require_nodes(f, I)); }

double mean_oscillation(const SampledFunction& f, const Interval& I) {
  const IndexRange r = require_nodes(f, I);
  return deviation_over(f, r, mean_over(f, r));
}

double mean_deviation(const SampledFunction& f, const Interval& I, double c) {
  return deviation_over(f, require_nodes(f, I), c);
}

std::vector<double> oscillations(const SampledFunction& f, std::span<const Interval> sweep) {
  std::vector<IndexRange> ranges;
  ranges.reserve(sweep.size());
  for (const auto& I : sweep) ranges.push_back(require_nodes(f, I));
  std::vector<double> out(sweep.size());
  parallel_for(sweep.size(), [&](std::size_t i) { out[i] = deviation_over(f, ranges[i], mean_over(f, ranges[i])); });
  return out;
}

double bmo_norm(const SampledFunction& f, std::span<const Interval> sweep) {
  if (sweep.empty()) throw InputError("bmo sweep must be non-empty");
  std::vector<IndexRange> ranges;
  ranges.reserve(sweep.size());
  for (const auto& I : sweep) ranges.push_back(require_nodes(f, I));
  double best = 0.0;
  const auto n = static_cast<long long>(ranges.size());
#pragma omp parallel for schedule(dynamic, 16) reduction(max : best)
  for (long long i = 0; i < n; ++i) {
    const IndexRange& r = ranges[static_cast<std::size_t>(i)];
    best = std::max(best, deviation_over(f, r, mean_over(f, r)));
  }
  return best;
}

MedianResult median(const SampledFunction& f, const Interval& I) {
  const IndexRange r = require_nodes(f, I);
  std::vector<double> v;
  v.reserve(r.size());
  for (std::size_t i = r.begin; i < r.end; ++i) v.push_back(f[i].real());
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  MedianResult m;
  m.value = v[(n - 1) / 2];
  m.nodes = n;
  const auto below = static_cast<std::size_t>(std::lower_bound(v.begin(), v.end(), m.value) - v.begin());
  const auto above = static_cast<std::size_t>(v.end() - std::upper_bound(v.begin(), v.end(), m.value));
  m.lower_excess = static_cast<double>(below) / static_cast<double>(n);
  m.upper_excess = static_cast<double>(above) / static_cast<double>(n);
  return m;
}

std::vector<Interval> dyadic_sweep(const Grid& grid, const Interval& window, std::size_t stride, int min_level) {
  grid.validate();
  if (stride == 0) throw InputError("sweep stride must be positive");
  if (min_level < 0) throw InputError("sweep level must be non-negative");
  const IndexRange r = nodes_in(grid, window);
  if (r.empty()) throw InputError("sweep window contains no grid node");
  const double h = grid.step;
  std::vector<Interval> out;
  for (std::size_t len = std::size_t{1} << min_level; len <= r.size(); len <<= 1) {
    for (std::size_t start = r.begin; start + len <= r.end; start += stride) {
      const double left = grid.node(start) - 0.5 * h;
      out.push_back(Interval::from_endpoints(left, left + static_cast<double>(len) * h));
    }
  }
  return out;
}

VmoProfile vmo_profile(const SampledFunction& f, std::span<const double> delta_ladder,
                       std::span<const double> R_ladder, std::size_t stride) {
  require_ladder(delta_ladder, "delta");
  require_ladder(R_ladder, "R");
  const Grid& g = f.grid();
  const Interval window = Interval::from_endpoints(g.front() - 0.5 * g.step, g.back() + 0.5 * g.step);
  const std::vector<Interval> sweep = dyadic_sweep(g, window, stride);
  const std::vector<double> osc = oscillations(f, sweep);

  auto sup_where = [&](auto keep) {
    double best = 0.0;
    for (std::size_t i = 0; i < sweep.size(); ++i)
      if (keep(sweep[i])) best = std::max(best, osc[i]);
    return best;
  };
  std::vector<double> deltas(delta_ladder.begin(), delta_ladder.end());
  std::vector<double> radii(R_ladder.begin(), R_ladder.end());
  std::sort(deltas.begin(), deltas.end());
  std::sort(radii.begin(), radii.end());

  VmoProfile prof;
  for (double d : deltas) prof.small_scale.emplace_back(d, sup_where([d](const Interval& I) { return I.measure() < d; }));
  for (double R : radii) {
    prof.large_scale.emplace_back(R, sup_where([R](const Interval& I) { return I.measure() > R; }));
    const Interval core(0.0, R);
    prof.far_away.emplace_back(R, sup_where([&core](const Interval& I) { return !I.intersects(core); }));
  }
  return prof;
}

}  // namespace cauchylab

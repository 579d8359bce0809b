#include "cauchylab/quadrature.hpp"

#include <cmath>

#include "cauchylab/error.hpp"

namespace cauchylab {

namespace {

QuadSource base_source(const CauchyKernel& kernel, const SampledFunction& f) {
  QuadSource src;
  src.grid = f.grid();
  const IndexRange r = f.support();
  src.first = r.begin;
  src.last = r.end;
  src.heights.resize(r.size());
  src.values.resize(r.size());
  for (std::size_t j = r.begin; j < r.end; ++j) {
    src.heights[j - r.begin] = kernel.curve().height(f.node(j));
    src.values[j - r.begin] = f[j];
  }
  return src;
}

// Radius in half steps, rounded so that grid-multiple radii stay inclusive.
long long half_steps(double radius, double h) { return static_cast<long long>(std::floor(2.0 * radius / h + 1e-9)); }

}  // namespace

QuadSource make_source(const CauchyKernel& kernel, const SampledFunction& f) { return base_source(kernel, f); }

QuadSource make_source(const CauchyKernel& kernel, const SampledFunction& f, const RealFunction& b) {
  QuadSource src = base_source(kernel, f);
  src.weighted.resize(src.values.size());
  for (std::size_t j = src.first; j < src.last; ++j)
    src.weighted[j - src.first] = b(f.node(j)) * src.values[j - src.first];
  return src;
}

KernelPoint kernel_point(const CauchyKernel& kernel, const Grid& grid, double x) {
  KernelPoint kp;
  kp.half = half_index(grid, x);
  kp.x = kp.half ? grid.origin + static_cast<double>(*kp.half) * 0.5 * grid.step : x;
  kp.height = kernel.curve().height(kp.x);
  return kp;
}

cplx sum_all(const CauchyKernel& kernel, const QuadSource& src, const KernelPoint& kp, cplx alpha, cplx gamma) {
  const double hh = 0.5 * src.grid.step;
  const bool mixed = !src.weighted.empty();
  cplx acc{};
  for (std::size_t j = src.first; j < src.last; ++j) {
    const std::size_t k = j - src.first;
    const double u = kp.half ? static_cast<double>(2 * static_cast<long long>(j) - *kp.half) * hh : src.grid.node(j) - kp.x;
    if (u == 0.0) continue;
    const cplx coef = mixed ? alpha * src.values[k] - gamma * src.weighted[k] : alpha * src.values[k];
    acc += kernel.from_offsets(u, src.heights[k] - kp.height) * coef;
  }
  return src.grid.step * acc;
}

cplx sum_outside(const CauchyKernel& kernel, const QuadSource& src, const KernelPoint& kp, double t) {
  const double hh = 0.5 * src.grid.step;
  cplx acc{};
  if (kp.half) {
    const long long c2 = *kp.half;
    const long long lim = half_steps(t, src.grid.step);
    for (std::size_t j = src.first; j < src.last; ++j) {
      const long long d2 = 2 * static_cast<long long>(j) - c2;
      if (std::llabs(d2) <= lim) continue;
      const std::size_t k = j - src.first;
      acc += kernel.from_offsets(static_cast<double>(d2) * hh, src.heights[k] - kp.height) * src.values[k];
    }
  } else {
    for (std::size_t j = src.first; j < src.last; ++j) {
      const double u = src.grid.node(j) - kp.x;
      if (!(std::abs(u) > t)) continue;
      const std::size_t k = j - src.first;
      acc += kernel.from_offsets(u, src.heights[k] - kp.height) * src.values[k];
    }
  }
  return src.grid.step * acc;
}

cplx sum_pv(const CauchyKernel& kernel, const QuadSource& src, const KernelPoint& kp, long long kt2, Exclusion mode) {
  if (!kp.half) throw InputError("principal value needs x on a grid node or midpoint; regrid or move x");
  const long long c2 = *kp.half;
  const double hh = 0.5 * src.grid.step;
  const auto first = static_cast<long long>(src.first);
  const auto last = static_cast<long long>(src.last);
  auto term = [&](long long j, long long d2) -> cplx {
    if (j < first || j >= last) return {};
    const auto k = static_cast<std::size_t>(j - first);
    return kernel.from_offsets(static_cast<double>(d2) * hh, src.heights[k] - kp.height) * src.values[k];
  };

  cplx acc{};
  if (mode == Exclusion::NodeSkip) {
    for (long long j = first; j < last; ++j) {
      const long long d2 = 2 * j - c2;
      if (d2 != 0) acc += term(j, d2);
    }
    return src.grid.step * acc;
  }
  // inside the window: mirrored pairs; d2 has the parity of c2
  for (long long d2 = (c2 & 1LL) ? 1 : 2; d2 <= kt2; d2 += 2) {
    const long long jp = (c2 + d2) / 2;
    const long long jm = (c2 - d2) / 2;
    acc += term(jp, d2) + term(jm, -d2);
  }
  for (long long j = first; j < last; ++j) {
    const long long d2 = 2 * j - c2;
    if (std::llabs(d2) > kt2) acc += term(j, d2);
  }
  return src.grid.step * acc;
}

cplx sum_band(const CauchyKernel& kernel, const QuadSource& src, const KernelPoint& kp, long long center_half,
              double radius, bool inside, cplx alpha, cplx gamma) {
  const long long r2 = half_steps(radius, src.grid.step);
  const double hh = 0.5 * src.grid.step;
  const bool mixed = !src.weighted.empty();
  cplx acc{};
  for (std::size_t j = src.first; j < src.last; ++j) {
    const long long d2 = 2 * static_cast<long long>(j) - center_half;
    if ((std::llabs(d2) <= r2) != inside) continue;
    const double u = kp.half ? static_cast<double>(2 * static_cast<long long>(j) - *kp.half) * hh : src.grid.node(j) - kp.x;
    if (u == 0.0) continue;
    const std::size_t k = j - src.first;
    const cplx coef = mixed ? alpha * src.values[k] - gamma * src.weighted[k] : alpha * src.values[k];
    acc += kernel.from_offsets(u, src.heights[k] - kp.height) * coef;
  }
  return src.grid.step * acc;
}

double smoothness_majorant(const CauchyKernel& kernel, const QuadSource& src, long long center_half, double radius,
                           double z, cplx alpha, cplx gamma) {
  const long long r2 = half_steps(radius, src.grid.step);
  const double hh = 0.5 * src.grid.step;
  const bool mixed = !src.weighted.empty();
  double acc = 0.0;
  for (std::size_t j = src.first; j < src.last; ++j) {
    const long long d2 = 2 * static_cast<long long>(j) - center_half;
    if (std::llabs(d2) <= r2) continue;
    const std::size_t k = j - src.first;
    const double d = static_cast<double>(d2) * hh;
    const cplx coef = mixed ? alpha * src.values[k] - gamma * src.weighted[k] : alpha * src.values[k];
    acc += std::abs(coef) / (d * d);
  }
  return src.grid.step * kernel.size_constant() * std::abs(kernel.prefactor()) * std::abs(z) * acc;
}

}  // namespace cauchylab

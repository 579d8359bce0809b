#include "cauchylab/reference.hpp"

#include <cmath>

namespace cauchylab::reference {

cplx truncated_at(const CauchyKernel& kernel, const SampledFunction& f, double x, double t) {
  cplx acc{};
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double y = f.node(j);
    if (std::abs(y - x) > t && f[j] != cplx{}) acc += eval_kernel(kernel, x, y) * f[j];
  }
  return f.step() * acc;
}

cplx pv_at(const CauchyKernel& kernel, const SampledFunction& f, double x) {
  cplx acc{};
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double y = f.node(j);
    if (y != x && f[j] != cplx{}) acc += eval_kernel(kernel, x, y) * f[j];
  }
  return f.step() * acc;
}

cplx commutator_at(const CauchyKernel& kernel, const RealFunction& b, const SampledFunction& f, double x) {
  const SampledFunction bf = b.sample(f.grid()).times(f);
  return b(x) * pv_at(kernel, f, x) - pv_at(kernel, bf, x);
}

std::vector<cplx> pv_sweep(const CauchyKernel& kernel, const SampledFunction& f, std::span<const double> points) {
  std::vector<cplx> out;
  out.reserve(points.size());
  for (double x : points) out.push_back(pv_at(kernel, f, x));
  return out;
}

std::vector<cplx> commutator_sweep(const CauchyKernel& kernel, const RealFunction& b, const SampledFunction& f,
                                   std::span<const double> points) {
  const SampledFunction bf = b.sample(f.grid()).times(f);
  std::vector<cplx> out;
  out.reserve(points.size());
  for (double x : points) out.push_back(b(x) * pv_at(kernel, f, x) - pv_at(kernel, bf, x));
  return out;
}

}  // namespace cauchylab::reference

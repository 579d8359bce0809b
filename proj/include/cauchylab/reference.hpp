#pragma once

#include <span>
#include <vector>

#include "cauchylab/functions.hpp"
#include "cauchylab/kernel.hpp"
#include "cauchylab/sampling.hpp"

/// Straightforward serial versions of the operator sums. They evaluate the
/// kernel through eval_kernel at every node and use the two-term form of the
/// commutator, so they share no code path with the parallel sweeps.
namespace cauchylab::reference {

/// h sum over nodes with |y_j - x| > t.
cplx truncated_at(const CauchyKernel& kernel, const SampledFunction& f, double x, double t);

/// h sum over every node except y_j == x.
cplx pv_at(const CauchyKernel& kernel, const SampledFunction& f, double x);

/// b(x) (C f)(x) - C(b f)(x).
cplx commutator_at(const CauchyKernel& kernel, const RealFunction& b, const SampledFunction& f, double x);

std::vector<cplx> pv_sweep(const CauchyKernel& kernel, const SampledFunction& f, std::span<const double> points);

std::vector<cplx> commutator_sweep(const CauchyKernel& kernel, const RealFunction& b, const SampledFunction& f,
                                   std::span<const double> points);

}  // namespace cauchylab::reference

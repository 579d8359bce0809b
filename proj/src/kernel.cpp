#include "cauchylab/kernel.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "cauchylab/error.hpp"
#include "cauchylab/parallel.hpp"

namespace cauchylab {

CauchyKernel::CauchyKernel(LipschitzCurve curve, bool with_prefactor)
    : curve_(curve),
      with_prefactor_(with_prefactor),
      prefactor_(with_prefactor ? cplx{0.0, -1.0 / std::numbers::pi} : cplx{1.0, 0.0}) {}

cplx CauchyKernel::operator()(double x, double y) const {
  if (x == y) throw SingularityError("kernel evaluated on the diagonal x == y");
  return from_offsets(y - x, curve_.height(y) - curve_.height(x));
}

cplx eval_kernel(const CauchyKernel& kernel, double x, double y) { return kernel(x, y); }

namespace {

double scale_of(const CauchyKernel& kernel) { return std::abs(kernel.prefactor()); }

double modulus(const CauchyKernel& kernel, double x, double y) {
  const double u = y - x;
  const double v = kernel.curve().height(y) - kernel.curve().height(x);
  return scale_of(kernel) / std::hypot(u, v);
}

}  // namespace

EstimateCheck check_size(const CauchyKernel& kernel, double x, double y) {
  if (x == y) throw SingularityError("size estimate needs x != y");
  const double lhs = modulus(kernel, x, y);
  const double rhs = 1.0 / std::abs(y - x);
  return {lhs, rhs, lhs <= rhs};
}

EstimateCheck check_size_standard(const CauchyKernel& kernel, double x, double y) {
  if (x == y) throw SingularityError("size estimate needs x != y");
  const double lhs = modulus(kernel, x, y);
  const double rhs = kernel.size_constant() / std::abs(x - y);
  return {lhs, rhs, lhs <= rhs};
}

EstimateCheck check_smoothness(const CauchyKernel& kernel, double x, double y, double y_prime, bool transposed) {
  if (x == y) throw InputError("smoothness estimate needs x != y");
  const double d = std::abs(y - x);
  const double dy = std::abs(y - y_prime);
  if (!(dy <= 0.5 * d)) throw InputError("smoothness estimate needs |y - y'| <= |y - x| / 2");
  const cplx diff = transposed ? kernel(y, x) - kernel(y_prime, x) : kernel(x, y) - kernel(x, y_prime);
  const double lhs = std::abs(diff);
  const double rhs = kernel.size_constant() * dy / (d * d);
  return {lhs, rhs, lhs <= rhs};
}

KernelEstimateReports verify_kernel_estimates(const CauchyKernel& kernel, std::size_t samples, std::uint64_t seed,
                                              double span) {
  if (samples == 0) throw InputError("kernel sweep needs at least one sample");
  if (!(span > 0) || !std::isfinite(span)) throw InputError("kernel sweep span must be positive");

  struct Triple {
    double x, y, yp;
  };
  std::vector<Triple> triples(samples);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> logd(std::log(1e-6 * span), std::log(span));
  for (std::size_t i = 0; i < samples; ++i) {
    const double x = span * unit(rng);
    double d = (i % 2 == 0) ? std::exp(logd(rng)) : span * std::abs(unit(rng));
    if (d == 0.0) d = span;
    const double y = unit(rng) < 0 ? x - d : x + d;
    // y' is drawn inside the admissible ball; the guard re-checks after rounding
    double yp = y + unit(rng) * 0.5 * std::abs(y - x);
    if (!(std::abs(y - yp) <= 0.5 * std::abs(y - x))) yp = y;
    triples[i] = {x, y == x ? x + span : y, yp};
  }

  std::vector<EstimateCheck> size(samples), smooth(samples), trans(samples);
  parallel_for(samples, [&](std::size_t i) {
    const auto& t = triples[i];
    size[i] = check_size(kernel, t.x, t.y);
    smooth[i] = check_smoothness(kernel, t.x, t.y, t.yp, false);
    trans[i] = check_smoothness(kernel, t.x, t.y, t.yp, true);
  });

  const std::string c = format_double(kernel.size_constant());
  KernelEstimateReports out{
      BoundReport("kernel_size", "|K(x,y)| <= 1/|y-x|", {"x", "y"}),
      BoundReport("kernel_smoothness", "|K(x,y) - K(x,y')| <= " + c + " |y-y'| / |y-x|^2, |y-y'| <= |y-x|/2",
                  {"x", "y", "y_prime"}),
      BoundReport("kernel_smoothness_transposed",
                  "|K(y,x) - K(y',x)| <= " + c + " |y-y'| / |y-x|^2, |y-y'| <= |y-x|/2", {"x", "y", "y_prime"}),
  };
  double worst_size = 0.0, worst_smooth = 0.0, worst_trans = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const auto& t = triples[i];
    out.size.add({t.x, t.y}, size[i]);
    out.smoothness.add({t.x, t.y, t.yp}, smooth[i]);
    out.transposed.add({t.x, t.y, t.yp}, trans[i]);
    worst_size = std::max(worst_size, size[i].lhs / size[i].rhs);
    if (smooth[i].rhs > 0) worst_smooth = std::max(worst_smooth, smooth[i].lhs / smooth[i].rhs);
    if (trans[i].rhs > 0) worst_trans = std::max(worst_trans, trans[i].lhs / trans[i].rhs);
  }
  for (BoundReport* r : {&out.size, &out.smoothness, &out.transposed}) {
    r->set_summary("samples", static_cast<double>(samples));
    r->set_summary("lipschitz_constant", kernel.curve().lipschitz_constant());
    r->set_summary("size_constant", kernel.size_constant());
    r->set_summary("violations", static_cast<double>(r->violations()));
    r->add_note("curve " + kernel.curve().describe());
  }
  out.size.set_summary("max_ratio", worst_size);
  out.smoothness.set_summary("max_ratio", worst_smooth);
  out.transposed.set_summary("max_ratio", worst_trans);
  // the same moduli against the standard-kernel constant C = 2 (L + 1)
  double worst_standard = 0.0;
  for (const auto& t : triples) {
    const EstimateCheck s = check_size_standard(kernel, t.x, t.y);
    worst_standard = std::max(worst_standard, s.lhs / s.rhs);
  }
  out.size.set_summary("max_ratio_standard_constant", worst_standard);
  return out;
}

}  // namespace cauchylab

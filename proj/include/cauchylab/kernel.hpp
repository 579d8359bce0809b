#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>

#include "cauchylab/curve.hpp"
#include "cauchylab/report.hpp"

namespace cauchylab {

using cplx = std::complex<double>;

/// 1 / (u + i v) without overflow and exact for v == 0.
inline cplx cauchy_reciprocal(double u, double v) {
  if (std::abs(v) <= std::abs(u)) {
    const double r = v / u;
    const double d = u + v * r;
    return {1.0 / d, -r / d};
  }
  const double r = u / v;
  const double d = v + u * r;
  return {r / d, -1.0 / d};
}

/// K(x, y) = 1 / (y - x + i (A(y) - A(x))) on the graph of a Lipschitz curve.
///
/// By default the 1/(pi i) normalisation is left out. With `with_prefactor`
/// every value is multiplied by -i/pi.
class CauchyKernel {
 public:
  explicit CauchyKernel(LipschitzCurve curve, bool with_prefactor = false);

  const LipschitzCurve& curve() const { return curve_; }
  double smoothness_exponent() const { return 1.0; }
  /// 2 (L + 1).
  double size_constant() const { return 2.0 * (curve_.lipschitz_constant() + 1.0); }
  bool has_prefactor() const { return with_prefactor_; }
  cplx prefactor() const { return prefactor_; }

  /// Throws SingularityError when x == y.
  cplx operator()(double x, double y) const;

  /// Kernel value from the offsets u = y - x and v = A(y) - A(x); no checks.
  cplx from_offsets(double u, double v) const {
    const cplx k = cauchy_reciprocal(u, v);
    return with_prefactor_ ? prefactor_ * k : k;
  }

 private:
  LipschitzCurve curve_;
  bool with_prefactor_;
  cplx prefactor_;
};

cplx eval_kernel(const CauchyKernel& kernel, double x, double y);

/// |K(x,y)| <= 1 / |y - x|. Exact: the modulus is taken as 1 / hypot(u, v).
EstimateCheck check_size(const CauchyKernel& kernel, double x, double y);
/// |K(x,y)| <= C / |x - y| with C = 2 (L + 1).
EstimateCheck check_size_standard(const CauchyKernel& kernel, double x, double y);

/// |K(x,y) - K(x,y')| <= 2(L+1) |y - y'| / |y - x|^2, or with both kernel
/// arguments swapped when `transposed`. Requires x != y and
/// |y - y'| <= |y - x| / 2; violations throw InputError.
EstimateCheck check_smoothness(const CauchyKernel& kernel, double x, double y, double y_prime, bool transposed);

struct KernelEstimateReports {
  BoundReport size;
  BoundReport smoothness;
  BoundReport transposed;

  bool passed() const { return size.passed() && smoothness.passed() && transposed.passed(); }
  std::size_t violations() const { return size.violations() + smoothness.violations() + transposed.violations(); }
};

/// Randomised sweep of the three standard estimates. x is uniform on
/// [-span, span]; |y - x| is log-uniform on [1e-6 span, span] for half of the
/// samples and uniform for the rest; y' = y + s |y - x| / 2 with s uniform on
/// (-1, 1).
KernelEstimateReports verify_kernel_estimates(const CauchyKernel& kernel, std::size_t samples, std::uint64_t seed,
                                              double span = 100.0);

}  // namespace cauchylab

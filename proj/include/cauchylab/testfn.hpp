#pragma once

#include <span>
#include <vector>

#include "cauchylab/functions.hpp"
#include "cauchylab/kernel.hpp"
#include "cauchylab/report.hpp"
#include "cauchylab/sampling.hpp"

namespace cauchylab {

/// f = |I|^{-1/p} (chi_upper - chi_lower - a chi_I) for the sets where b
/// lies above and below its median on I. a is fixed by node counts, so f
/// has mean zero on the grid.
struct TestFunction {
  SampledFunction f;
  Interval base{0.0, 1.0};
  double a = 0.0;
  std::vector<bool> upper_mask;
  std::vector<bool> lower_mask;
  double p = 2.0;
  /// M(b, I), the measured oscillation of b on the base interval.
  double epsilon = 0.0;
  double median = 0.0;
};

/// f lives on the grid of b (zero outside I). Throws InputError when b is
/// constant on I.
TestFunction build_test_function(const SampledFunction& b, const Interval& I, double p);
/// Samples b on a cell-centred grid of `nodes` cells over I first.
TestFunction build_test_function(const RealFunction& b, const Interval& I, double p, std::size_t nodes = 256);

/// The five construction invariants, one row each: |a| <= 1/2, support in I,
/// mean zero, f (b - alpha) >= 0, and the pointwise band on the masks.
BoundReport audit_test_function(const TestFunction& tf, const SampledFunction& b);

enum class AnnulusSide { Lower, Upper };

struct AnnulusBoundReport {
  int k = 0;
  AnnulusSide side = AnnulusSide::Lower;
  /// int |[b, C] f|^p over the annulus (lower) or the shell (upper)
  double lhs = 0.0;
  /// 2^{-k (p - 1)}
  double normalizer = 0.0;
  double ratio = 0.0;
  /// ratio / epsilon^p
  double scaled_ratio = 0.0;
};

struct AnnulusConfig {
  double A1 = 8.0;
  /// evaluation cells per annulus piece
  std::size_t cells = 256;
};

/// Over I^k = (x + 2^k r, x + 2^{k+1} r).
AnnulusBoundReport verify_annulus_lower(const RealFunction& b, const TestFunction& tf, int k,
                                        const CauchyKernel& kernel, const AnnulusConfig& cfg);
/// Over the shell 2^{k+1} I \ 2^k I (both sides).
AnnulusBoundReport verify_annulus_upper(const RealFunction& b, const TestFunction& tf, int k,
                                        const CauchyKernel& kernel, const AnnulusConfig& cfg);

struct AnnulusLadder {
  std::vector<AnnulusBoundReport> lower;
  std::vector<AnnulusBoundReport> upper;
  /// max / min of lower scaled ratios
  double lower_spread = 0.0;
  /// max / min of upper ratios
  double upper_spread = 0.0;
  double min_lower_scaled = 0.0;
  double max_upper = 0.0;

  bool passed(double lower_limit = 3.0, double upper_limit = 10.0) const;
  BoundReport to_report(double lower_limit = 3.0, double upper_limit = 10.0) const;
};

AnnulusLadder annulus_ladder(const RealFunction& b, const TestFunction& tf, std::span<const int> ks,
                             const CauchyKernel& kernel, const AnnulusConfig& cfg);

struct IntermediateBounds {
  /// |(b(y) - alpha) C f(y)| <= slack 2(L+1) r |I|^{1/p'} |b(y) - alpha| / |x - y|^2
  BoundReport pointwise;
  /// |alpha_{2^{k+1} I}(b) - alpha_I(b)| <= 3 (k + 1) bmo(b)
  BoundReport median_drift;

  bool passed() const { return pointwise.passed() && median_drift.passed(); }
};

struct IntermediateConfig {
  std::size_t points = 64;
  double slack = 1.1;
  /// nodes used to sample b on each dilate for medians and oscillations
  std::size_t nodes = 1024;
};

IntermediateBounds verify_intermediate_bounds(const RealFunction& b, const TestFunction& tf, int k,
                                              const CauchyKernel& kernel, const IntermediateConfig& cfg);

}  // namespace cauchylab

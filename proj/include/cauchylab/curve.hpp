#pragma once

#include <span>
#include <string>
#include <utility>

#include "cauchylab/report.hpp"

namespace cauchylab {

enum class ProfileKind { Flat, Affine, Sawtooth, SmoothBump };

/// The graph curve { x + i A(x) } for a closed-form Lipschitz profile A.
///
/// Profiles:
///   Flat                 A = 0
///   Affine(c)            A = c x
///   Sawtooth(a, P)       triangle wave of period P, A(P/4) = a, A(0) = 0
///   SmoothBump(h, w)     A = h exp(-x^2 / w^2)
///
/// The stored Lipschitz constant is the exact sup of |A'|.
class LipschitzCurve {
 public:
  static LipschitzCurve flat();
  static LipschitzCurve affine(double slope);
  static LipschitzCurve sawtooth(double amplitude, double period);
  static LipschitzCurve smooth_bump(double height, double width);

  double height(double x) const;
  /// A'(x); right derivative at the sawtooth corners.
  double slope(double x) const;
  double lipschitz_constant() const { return lipschitz_; }

  ProfileKind kind() const { return kind_; }
  double param1() const { return p1_; }
  double param2() const { return p2_; }
  std::string describe() const;

 private:
  LipschitzCurve(ProfileKind kind, double p1, double p2, double lipschitz)
      : kind_(kind), p1_(p1), p2_(p2), lipschitz_(lipschitz) {}

  ProfileKind kind_;
  double p1_;
  double p2_;
  double lipschitz_;
};

/// Max difference quotient |A(x1) - A(x2)| / |x1 - x2| over the sample pairs.
/// Passes iff it does not exceed L (1 + 1e-12). Coincident pairs are rejected.
BoundReport verify_lipschitz(const LipschitzCurve& curve, std::span<const std::pair<double, double>> samples);

}  // namespace cauchylab

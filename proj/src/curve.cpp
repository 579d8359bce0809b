#include "cauchylab/curve.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cauchylab/error.hpp"

namespace cauchylab {

namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw InputError(std::string("curve parameter '") + what + "' must be finite");
}

// Position within the period, in [0, 1).
double phase(double x, double period) {
  const double u = x / period;
  const double v = u - std::floor(u);
  return v >= 1.0 ? 0.0 : v;
}

}  // namespace

LipschitzCurve LipschitzCurve::flat() { return LipschitzCurve(ProfileKind::Flat, 0.0, 0.0, 0.0); }

LipschitzCurve LipschitzCurve::affine(double slope) {
  require_finite(slope, "slope");
  return LipschitzCurve(ProfileKind::Affine, slope, 0.0, std::abs(slope));
}

LipschitzCurve LipschitzCurve::sawtooth(double amplitude, double period) {
  require_finite(amplitude, "amplitude");
  require_finite(period, "period");
  if (!(period > 0)) throw InputError("sawtooth period must be positive");
  return LipschitzCurve(ProfileKind::Sawtooth, amplitude, period, std::abs(amplitude) * 4.0 / period);
}

LipschitzCurve LipschitzCurve::smooth_bump(double height, double width) {
  require_finite(height, "height");
  require_finite(width, "width");
  if (!(width > 0)) throw InputError("bump width must be positive");
  // max |d/dx h exp(-x^2/w^2)| is attained at x = w / sqrt(2)
  const double lip = std::abs(height) * std::sqrt(2.0) * std::exp(-0.5) / width;
  return LipschitzCurve(ProfileKind::SmoothBump, height, width, lip);
}

double LipschitzCurve::height(double x) const {
  switch (kind_) {
    case ProfileKind::Flat:
      return 0.0;
    case ProfileKind::Affine:
      return p1_ * x;
    case ProfileKind::Sawtooth: {
      const double v = phase(x, p2_);
      double tri;
      if (v < 0.25)
        tri = 4.0 * v;
      else if (v < 0.75)
        tri = 2.0 - 4.0 * v;
      else
        tri = 4.0 * v - 4.0;
      return p1_ * tri;
    }
    case ProfileKind::SmoothBump: {
      const double s = x / p2_;
      return p1_ * std::exp(-s * s);
    }
  }
  return 0.0;
}

double LipschitzCurve::slope(double x) const {
  switch (kind_) {
    case ProfileKind::Flat:
      return 0.0;
    case ProfileKind::Affine:
      return p1_;
    case ProfileKind::Sawtooth: {
      const double v = phase(x, p2_);
      const double s = p1_ * 4.0 / p2_;
      return (v >= 0.25 && v < 0.75) ? -s : s;
    }
    case ProfileKind::SmoothBump: {
      const double s = x / p2_;
      return -2.0 * p1_ * s / p2_ * std::exp(-s * s);
    }
  }
  return 0.0;
}

std::string LipschitzCurve::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case ProfileKind::Flat:
      os << "flat";
      break;
    case ProfileKind::Affine:
      os << "affine(slope=" << p1_ << ")";
      break;
    case ProfileKind::Sawtooth:
      os << "sawtooth(amplitude=" << p1_ << ",period=" << p2_ << ")";
      break;
    case ProfileKind::SmoothBump:
      os << "smooth_bump(height=" << p1_ << ",width=" << p2_ << ")";
      break;
  }
  os << " L=" << lipschitz_;
  return os.str();
}

BoundReport verify_lipschitz(const LipschitzCurve& curve, std::span<const std::pair<double, double>> samples) {
  if (samples.empty()) throw InputError("verify_lipschitz needs at least one sample pair");
  BoundReport report("lipschitz", "|A(x1) - A(x2)| <= L |x1 - x2|", {"x1", "x2"});
  const double L = curve.lipschitz_constant();
  const double limit = L * (1.0 + 1e-12);
  double worst = 0.0;
  for (const auto& [x1, x2] : samples) {
    if (x1 == x2) throw InputError("verify_lipschitz: coincident sample pair");
    const double q = std::abs(curve.height(x1) - curve.height(x2)) / std::abs(x1 - x2);
    worst = std::max(worst, q);
    report.add({x1, x2}, q, L, q <= limit);
  }
  report.set_summary("max_quotient", worst);
  report.set_summary("lipschitz_constant", L);
  return report;
}

}  // namespace cauchylab

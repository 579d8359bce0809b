#include "cauchylab/functions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cauchylab/error.hpp"

namespace cauchylab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw InputError(std::string("function parameter '") + what + "' must be finite");
}

}  // namespace

RealFunction RealFunction::constant(double c) {
  require_finite(c, "value");
  return RealFunction(Constant{c});
}

RealFunction RealFunction::linear(double slope, double intercept) {
  require_finite(slope, "slope");
  require_finite(intercept, "intercept");
  return RealFunction(Linear{slope, intercept});
}

RealFunction RealFunction::indicator(double a, double b, int power) {
  require_finite(a, "a");
  require_finite(b, "b");
  if (!(b > a)) throw InputError("indicator needs a < b");
  if (power < 0) throw InputError("indicator power must be non-negative");
  return RealFunction(Indicator{a, b, power});
}

RealFunction RealFunction::sign(double center) {
  require_finite(center, "center");
  return RealFunction(Sign{center});
}

RealFunction RealFunction::truncated_log(double center, double floor, double cap) {
  require_finite(center, "center");
  if (!(floor > 0) || !(cap > floor) || !std::isfinite(cap))
    throw InputError("truncated log needs 0 < floor < cap < inf");
  return RealFunction(TruncatedLog{center, floor, cap});
}

RealFunction RealFunction::bump(double center, double radius, double height) {
  require_finite(center, "center");
  require_finite(height, "height");
  if (!(radius > 0) || !std::isfinite(radius)) throw InputError("bump radius must be positive");
  return RealFunction(Bump{center, radius, height});
}

RealFunction RealFunction::piecewise_constant(std::vector<double> breaks, std::vector<double> values) {
  if (values.size() != breaks.size() + 1) throw InputError("piecewise constant needs one more value than breaks");
  if (!std::is_sorted(breaks.begin(), breaks.end())) throw InputError("piecewise constant breaks must be sorted");
  for (double v : values) require_finite(v, "value");
  for (double v : breaks) require_finite(v, "break");
  return RealFunction(PiecewiseConstant{std::move(breaks), std::move(values)});
}

RealFunction RealFunction::sampled(SampledFunction samples) { return RealFunction(Sampled{std::move(samples)}); }

double RealFunction::eval_form(double x) const {
  return std::visit(
      overloaded{
          [](const Constant& c) { return c.value; },
          [x](const Linear& l) { return l.slope * x + l.intercept; },
          [x](const Indicator& ind) {
            if (x < ind.a || x >= ind.b) return 0.0;
            double v = 1.0;
            for (int i = 0; i < ind.power; ++i) v *= x;
            return v;
          },
          [x](const Sign& s) { return x > s.center ? 1.0 : (x < s.center ? -1.0 : 0.0); },
          [x](const TruncatedLog& t) { return std::log(std::clamp(std::abs(x - t.center), t.floor, t.cap)); },
          [x](const Bump& b) {
            const double s = (x - b.center) / b.radius;
            if (std::abs(s) >= 1.0) return 0.0;
            return b.height * std::exp(1.0 - 1.0 / (1.0 - s * s));
          },
          [x](const PiecewiseConstant& pc) {
            const auto it = std::upper_bound(pc.breaks.begin(), pc.breaks.end(), x);
            return pc.values[static_cast<std::size_t>(it - pc.breaks.begin())];
          },
          [x](const Sampled& s) {
            const Grid& g = s.samples.grid();
            const double u = (x - g.origin) / g.step;
            const double r = std::round(u);
            auto at = [&](double idx) {
              if (idx < 0 || idx >= static_cast<double>(g.count)) return 0.0;
              return s.samples[static_cast<std::size_t>(idx)].real();
            };
            const double frac = u - std::floor(u);
            if (std::abs(frac - 0.5) <= 1e-9) return 0.5 * (at(std::floor(u)) + at(std::floor(u) + 1.0));
            return at(r);
          },
      },
      form_);
}

double RealFunction::operator()(double x) const { return scale_ * eval_form(dilation_ * x); }

SampledFunction RealFunction::sample(const Grid& grid) const {
  return SampledFunction::sample(grid, [this](double x) { return (*this)(x); });
}

RealFunction RealFunction::scaled(double lambda) const {
  require_finite(lambda, "scale");
  RealFunction out = *this;
  out.scale_ *= lambda;
  return out;
}

RealFunction RealFunction::dilated(double lambda) const {
  if (!(lambda > 0) || !std::isfinite(lambda)) throw InputError("dilation factor must be positive");
  RealFunction out = *this;
  out.dilation_ *= lambda;
  return out;
}

std::optional<std::pair<double, double>> RealFunction::support() const {
  using R = std::optional<std::pair<double, double>>;
  const R raw = std::visit(
      overloaded{
          [](const Constant& c) -> R {
            if (c.value == 0.0) return std::pair{0.0, 0.0};
            return std::nullopt;
          },
          [](const Linear&) -> R { return std::nullopt; },
          [](const Indicator& ind) -> R { return std::pair{ind.a, ind.b}; },
          [](const Sign&) -> R { return std::nullopt; },
          [](const TruncatedLog&) -> R { return std::nullopt; },
          [](const Bump& b) -> R { return std::pair{b.center - b.radius, b.center + b.radius}; },
          [](const PiecewiseConstant& pc) -> R {
            if (pc.values.front() != 0.0 || pc.values.back() != 0.0) return std::nullopt;
            if (pc.breaks.empty()) return std::pair{0.0, 0.0};
            return std::pair{pc.breaks.front(), pc.breaks.back()};
          },
          [](const Sampled& s) -> R {
            const IndexRange r = s.samples.support();
            if (r.empty()) return std::pair{0.0, 0.0};
            const double h = s.samples.step();
            return std::pair{s.samples.node(r.begin) - 0.5 * h, s.samples.node(r.end - 1) + 0.5 * h};
          },
      },
      form_);
  if (!raw) return raw;
  if (scale_ == 0.0) return std::pair{0.0, 0.0};
  return std::pair{raw->first / dilation_, raw->second / dilation_};
}

std::optional<double> RealFunction::sup_norm() const {
  using R = std::optional<double>;
  const R raw = std::visit(
      overloaded{
          [](const Constant& c) -> R { return std::abs(c.value); },
          [](const Linear& l) -> R {
            if (l.slope == 0.0) return std::abs(l.intercept);
            return std::nullopt;
          },
          [](const Indicator& ind) -> R {
            if (ind.power == 0) return 1.0;
            return std::pow(std::max(std::abs(ind.a), std::abs(ind.b)), ind.power);
          },
          [](const Sign&) -> R { return 1.0; },
          [](const TruncatedLog& t) -> R { return std::max(std::abs(std::log(t.floor)), std::abs(std::log(t.cap))); },
          [](const Bump& b) -> R { return std::abs(b.height); },
          [](const PiecewiseConstant& pc) -> R {
            double m = 0.0;
            for (double v : pc.values) m = std::max(m, std::abs(v));
            return m;
          },
          [](const Sampled& s) -> R {
            double m = 0.0;
            for (const auto& v : s.samples.values()) m = std::max(m, std::abs(v.real()));
            return m;
          },
      },
      form_);
  if (!raw) return raw;
  return std::abs(scale_) * *raw;
}

std::optional<double> RealFunction::lipschitz() const {
  using R = std::optional<double>;
  const R raw = std::visit(
      overloaded{
          [](const Constant&) -> R { return 0.0; },
          [](const Linear& l) -> R { return std::abs(l.slope); },
          [](const Indicator&) -> R { return std::nullopt; },
          [](const Sign&) -> R { return std::nullopt; },
          [](const TruncatedLog& t) -> R { return 1.0 / t.floor; },
          // max |d/ds exp(1 - 1/(1 - s^2))| on (-1, 1); the maximiser solves
          // 3 s^4 - 2 s^2 - 1 ... numerically 1.5417 at s = 0.6058 (bounded by 1.55).
          [](const Bump& b) -> R { return 1.55 * std::abs(b.height) / b.radius; },
          [](const PiecewiseConstant& pc) -> R {
            for (std::size_t i = 1; i < pc.values.size(); ++i)
              if (pc.values[i] != pc.values[i - 1]) return std::nullopt;
            return 0.0;
          },
          [](const Sampled&) -> R { return std::nullopt; },
      },
      form_);
  if (!raw) return raw;
  return std::abs(scale_) * dilation_ * *raw;
}

const SampledFunction* RealFunction::samples() const {
  if (const auto* s = std::get_if<Sampled>(&form_)) return &s->samples;
  return nullptr;
}

std::string RealFunction::describe() const {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const Constant& c) { os << "constant(" << c.value << ")"; },
                 [&](const Linear& l) { os << "linear(" << l.slope << "," << l.intercept << ")"; },
                 [&](const Indicator& i) { os << "indicator[" << i.a << "," << i.b << ")^" << i.power; },
                 [&](const Sign& s) { os << "sign(x-" << s.center << ")"; },
                 [&](const TruncatedLog& t) { os << "log|x-" << t.center << "| clamp[" << t.floor << "," << t.cap << "]"; },
                 [&](const Bump& b) { os << "bump(c=" << b.center << ",r=" << b.radius << ",h=" << b.height << ")"; },
                 [&](const PiecewiseConstant& pc) { os << "piecewise(" << pc.values.size() << " pieces)"; },
                 [&](const Sampled& s) { os << "sampled(" << s.samples.size() << " nodes)"; },
             },
             form_);
  if (scale_ != 1.0) os << "*" << scale_;
  if (dilation_ != 1.0) os << "@x*" << dilation_;
  return os.str();
}

}  // namespace cauchylab

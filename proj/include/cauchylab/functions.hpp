#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cauchylab/sampling.hpp"

namespace cauchylab {

/// Closed-form real functions on the line, used for symbols b and for
/// inputs f. Every instance can be evaluated at any point and sampled onto
/// any grid, so operator outputs can multiply by b at points that are not
/// input nodes.
class RealFunction {
 public:
  struct Constant {
    double value;
  };
  struct Linear {
    double slope;
    double intercept;
  };
  /// y^power on [a, b), zero elsewhere.
  struct Indicator {
    double a;
    double b;
    int power;
  };
  /// sign(x - center); 0 at the centre.
  struct Sign {
    double center;
  };
  /// log|x - center| with |x - center| clamped to [floor, cap].
  struct TruncatedLog {
    double center;
    double floor;
    double cap;
  };
  /// height * exp(1 - 1 / (1 - s^2)), s = (x - center) / radius; C_c^inf.
  struct Bump {
    double center;
    double radius;
    double height;
  };
  /// values[i] on [breaks[i-1], breaks[i]); values.size() == breaks.size() + 1.
  struct PiecewiseConstant {
    std::vector<double> breaks;
    std::vector<double> values;
  };
  /// Real part of samples read as cell-constant data; zero outside the grid.
  /// At a cell boundary the two neighbouring cells are averaged.
  struct Sampled {
    SampledFunction samples;
  };

  using Form = std::variant<Constant, Linear, Indicator, Sign, TruncatedLog, Bump, PiecewiseConstant, Sampled>;

  static RealFunction constant(double c);
  static RealFunction linear(double slope, double intercept = 0.0);
  static RealFunction indicator(double a, double b, int power = 0);
  static RealFunction sign(double center = 0.0);
  static RealFunction truncated_log(double center = 0.0, double floor = 1e-12, double cap = 1e12);
  static RealFunction bump(double center = 0.0, double radius = 1.0, double height = 1.0);
  static RealFunction piecewise_constant(std::vector<double> breaks, std::vector<double> values);
  static RealFunction sampled(SampledFunction samples);

  double operator()(double x) const;
  SampledFunction sample(const Grid& grid) const;

  /// lambda * g.
  RealFunction scaled(double lambda) const;
  /// x -> g(lambda x).
  RealFunction dilated(double lambda) const;

  /// Closed interval containing the support, when bounded.
  std::optional<std::pair<double, double>> support() const;
  /// sup |g|, when finite.
  std::optional<double> sup_norm() const;
  /// Lipschitz constant, when finite.
  std::optional<double> lipschitz() const;

  bool is_sampled() const { return std::holds_alternative<Sampled>(form_); }
  const SampledFunction* samples() const;
  const Form& form() const { return form_; }
  double scale() const { return scale_; }
  double dilation() const { return dilation_; }
  std::string describe() const;

 private:
  explicit RealFunction(Form form) : form_(std::move(form)) {}
  double eval_form(double x) const;

  Form form_;
  double scale_ = 1.0;
  double dilation_ = 1.0;
};

}  // namespace cauchylab

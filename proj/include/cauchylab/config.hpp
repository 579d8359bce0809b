#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cauchylab/curve.hpp"
#include "cauchylab/functions.hpp"
#include "cauchylab/quadrature.hpp"
#include "cauchylab/sampling.hpp"

namespace cauchylab {

/// {kind, params}; kinds flat, affine {slope}, sawtooth {amplitude, period},
/// smooth_bump {height, width}.
struct CurveSpec {
  std::string kind = "flat";
  nlohmann::json params = nlohmann::json::object();

  LipschitzCurve build() const;
};

/// Builtin function {kind, params} or {kind: "csv", params: {path}}.
/// Builtins: constant, linear, indicator, sign, truncated_log, bump,
/// piecewise_constant.
struct FunctionSpec {
  std::string kind;
  nlohmann::json params = nlohmann::json::object();

  bool is_csv() const { return kind == "csv"; }
  /// Closed form, or the CSV read as cell-constant data.
  RealFunction build() const;
  /// Samples on the grid; a CSV keeps its own grid, which must match when
  /// one is given.
  SampledFunction sample(const std::optional<Grid>& grid) const;
};

struct OperatorSpec {
  /// principal-value window in grid steps
  double truncation_steps = 1.0;
  Exclusion exclusion = Exclusion::SymmetricPair;
};

struct KernelParams {
  std::size_t samples = 100000;
  double span = 100.0;
};

struct EvalParams {
  int cells_per_gap = 64;
  /// convergence study points (cell boundaries of the grid); empty skips it
  std::vector<double> convergence_points;
};

struct BmoParams {
  std::size_t stride = 1;
  int min_level = 0;
  std::vector<double> delta_ladder{0.01, 0.1, 1.0};
  std::vector<double> R_ladder{1.0, 4.0, 16.0};
  /// intervals taken from the sweep for the median comparison
  std::size_t median_checks = 200;
};

struct HomogeneityParams {
  std::vector<double> M_ladder{16, 64, 256, 1024};
  std::size_t nodes = 2048;
  std::size_t eval_points = 64;
  double slack = 0.9;
  double slope_tol = 0.1;
};

struct AnnulusRunParams {
  std::optional<Interval> interval;
  std::vector<int> k_ladder{3, 4, 5, 6, 7, 8};
  double A1 = 8.0;
  std::size_t cells = 256;
  std::size_t nodes = 256;
  std::size_t intermediate_points = 64;
  double intermediate_slack = 1.1;
};

struct FkParams {
  /// family: f translated by each shift
  std::vector<double> shifts{0.0};
  std::vector<double> t_ladder{2.0, 4.0, 8.0};
  std::vector<double> z_ladder;
  /// tail-decay ladder (entries > 2); empty skips the tail check
  std::vector<double> tail_ladder;
  double tail_window_factor = 16384.0;
  int cells_per_gap = 64;
  /// equicontinuity split parameter in (0, 1/2); 0 skips the split
  double split = 0.25;
};

struct WitnessParams {
  std::string kind = "small";
  double A1 = 8.0;
  double A2 = 16.0;
  std::size_t length = 4;
  /// ratio between consecutive radii (small and large cases)
  double ratio = 32.0;
  /// far case: C_eps, radius, R1
  double C_eps = 1.0;
  double radius = 0.5;
  double R1 = 0.0;
  std::size_t nodes_per_radius = 64;
  double window_factor = 1024.0;
  int cells_per_gap = 64;
  double min_oscillation = 0.0;
  std::vector<int> k_ladder{3, 4, 5, 6, 7, 8};
  std::size_t annulus_cells = 128;
};

struct NormParams {
  /// family: f dilated by each scale
  std::vector<double> scales{1.0};
  int cells_per_gap = 64;
};

struct ExperimentConfig {
  std::uint64_t seed = 1;
  int threads = 0;
  bool prefactor = false;
  CurveSpec curve;
  std::optional<Grid> grid;
  OperatorSpec op;
  std::optional<FunctionSpec> b;
  std::optional<FunctionSpec> f;
  std::optional<Interval> window;
  double p = 2.0;

  KernelParams kernel;
  EvalParams eval;
  BmoParams bmo;
  HomogeneityParams homogeneity;
  AnnulusRunParams lemma41;
  FkParams fk;
  WitnessParams witness;
  NormParams norm;

  /// Throws InputError naming the offending field.
  void validate() const;
};

nlohmann::json to_json(const ExperimentConfig& cfg);
/// Unknown keys and wrong types throw InputError with the field path.
ExperimentConfig config_from_json(const nlohmann::json& j);
/// Parse errors report the line and column.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// "3..8" or "3,4,5".
std::vector<int> parse_int_list(const std::string& s);
/// "16,64,256".
std::vector<double> parse_double_list(const std::string& s);

}  // namespace cauchylab

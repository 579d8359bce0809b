#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cauchylab/functions.hpp"
#include "cauchylab/kernel.hpp"
#include "cauchylab/report.hpp"
#include "cauchylab/sampling.hpp"

namespace cauchylab {

struct FkReport {
  /// sup ||g||_p over the images
  double uniform_bound = 0.0;
  /// (t, sup ||g||_{L^p(|x| > t)})
  std::vector<std::pair<double, double>> tail_curve;
  /// (|z|, sup ||g(. + z) - g||_p)
  std::vector<std::pair<double, double>> equicontinuity_curve;

  BoundReport to_report() const;
};

/// Images must share nothing but p; each z must be a multiple of every
/// image's grid step. Ladders are sorted ascending in the report.
FkReport fk_diagnose(std::span<const SampledFunction> images, double p, std::span<const double> t_ladder,
                     std::span<const double> z_ladder);

struct TailConfig {
  double R = 1.0;
  /// output window radius in units of R
  double window_factor = 16384.0;
  int cells_per_gap = 64;
  double slope_tol = 0.15;
};

/// sup over the family of ||[b, C] f||_{L^p(|x| > t R)} for each t, with the
/// fitted log-log slope against -1/p' and the bound
/// 2^{2 + 1/p'} / (p - 1)^{1/p} ||b||_inf ||f||_p t^{-1/p'}.
/// b must be supported in I(0, R); entries of the ladder must exceed 2.
BoundReport tail_decay_check(const RealFunction& b, std::span<const SampledFunction> family, double p,
                             std::span<const double> t_ladder, const CauchyKernel& kernel, const TailConfig& cfg);

enum class WitnessCase { SmallScale, LargeScale, FarAway };

std::string to_string(WitnessCase c);
WitnessCase witness_case_from_string(const std::string& s);

struct WitnessConfig {
  WitnessCase kind = WitnessCase::SmallScale;
  double A1 = 8.0;
  double A2 = 16.0;
  std::vector<Interval> intervals;
  double p = 2.0;
  /// test-function grid cells per interval radius
  std::size_t nodes_per_radius = 64;
  /// output window radius as a multiple of the largest |x_j| + r_j
  double window_factor = 1024.0;
  int cells_per_gap = 64;
  /// M(b, I_j) must exceed this for every interval
  double min_oscillation = 0.0;
  std::vector<int> k_ladder{3, 4, 5, 6, 7, 8};
  std::size_t annulus_cells = 128;

  /// Geometry of the sequence for the chosen case; throws InputError.
  void validate() const;
};

/// I(0, ratio^{-l}) for l = 1..length.
std::vector<Interval> small_scale_sequence(double ratio, std::size_t length);
/// I(0, ratio^{l}) for l = 1..length.
std::vector<Interval> large_scale_sequence(double ratio, std::size_t length);
/// Intervals of radius `radius` < C_eps placed outside I(0, R_j) with
/// R_1 given and R_j = |x_{j-1}| + 4 A2 C_eps.
std::vector<Interval> far_away_sequence(double A2, double C_eps, double radius, double R1, std::size_t length);

struct WitnessReport {
  std::vector<std::vector<double>> distances;
  double min_distance = 0.0;
  std::vector<double> epsilons;
  double epsilon = 0.0;
  double C1 = 0.0;
  double C2 = 0.0;
  double A3 = 0.0;
  double suggested_A2 = 0.0;
  std::vector<double> image_norms;

  BoundReport to_report(const WitnessConfig& cfg) const;
};

/// Builds a test function per interval, applies the commutator on a shared
/// graded plan and returns the pairwise L^p distances of the images.
WitnessReport witness_separation(const RealFunction& b, const WitnessConfig& cfg, const CauchyKernel& kernel);

struct EquicontinuityTerms {
  double z = 0.0;
  double split = 0.0;
  /// ||L_i||_p over the lattice
  double norms[4] = {0.0, 0.0, 0.0, 0.0};
  double f_norm = 0.0;
  /// ||L_2|| / (split ||f||), ||L_3|| / ((|z| / split) ||f||), same for L_4
  double l2_constant = 0.0;
  double l3_constant = 0.0;
  double l4_constant = 0.0;
  BoundReport report;
};

/// The split of g(x) - g(x + z), g = [b, C] f, into four pieces at radius
/// |z| / split around x. Checks the identity L1 + L2 + L3 + L4 = g(x) - g(x+z),
/// |L1| <= |b(x) - b(x+z)| C* f(x) and the kernel-smoothness bound for L2 at
/// every lattice point. The lattice must be aligned with the grid of f, z
/// a grid multiple and split in (0, 1/2).
EquicontinuityTerms equicontinuity_terms(const RealFunction& b, const SampledFunction& f, const CauchyKernel& kernel,
                                         double z, double split, const Grid& lattice, double p = 2.0);

}  // namespace cauchylab

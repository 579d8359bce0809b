#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "cauchylab/sampling.hpp"

namespace cauchylab {

// Averages use the nodes of the grid inside I with the discrete measure
// n h, so the average of a constant is exact. Only real parts are used.

/// f_I over the nodes inside I. Empty intersections throw InputError.
double average(const SampledFunction& f, const Interval& I);

/// (1/|I|) int_I |f - f_I|.
double mean_oscillation(const SampledFunction& f, const Interval& I);

/// (1/|I|) int_I |f - c|.
double mean_deviation(const SampledFunction& f, const Interval& I, double c);

/// Max of mean_oscillation over the sweep; a lower bound for the BMO norm.
double bmo_norm(const SampledFunction& f, std::span<const Interval> sweep);

struct MedianResult {
  double value = 0.0;
  /// fraction of nodes in I with f > value
  double upper_excess = 0.0;
  /// fraction of nodes in I with f < value
  double lower_excess = 0.0;
  std::size_t nodes = 0;
};

/// Smallest node value alpha with #{f > alpha} <= n/2 and #{f < alpha} <= n/2.
MedianResult median(const SampledFunction& f, const Interval& I);

/// Intervals with cell-boundary endpoints inside `window` and lengths
/// 2^m h, m = min_level.., left endpoints advancing by `stride` cells.
std::vector<Interval> dyadic_sweep(const Grid& grid, const Interval& window, std::size_t stride = 1,
                                   int min_level = 0);

/// One mean oscillation per sweep interval (parallel).
std::vector<double> oscillations(const SampledFunction& f, std::span<const Interval> sweep);

struct VmoProfile {
  std::vector<std::pair<double, double>> small_scale;
  std::vector<std::pair<double, double>> large_scale;
  std::vector<std::pair<double, double>> far_away;
};

/// Sup of M(f, I) over the dyadic sweep of the grid, restricted to
/// |I| < delta, |I| > R, and I disjoint from I(0, R). Empty families give 0.
VmoProfile vmo_profile(const SampledFunction& f, std::span<const double> delta_ladder,
                       std::span<const double> R_ladder, std::size_t stride = 1);

}  // namespace cauchylab

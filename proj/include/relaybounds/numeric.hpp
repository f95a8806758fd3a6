// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace relaybounds {

inline constexpr double kLn2 = 0.69314718055994530942;

/// log2(1 + x)
double log2p(double x);

/// Binary entropy in bits; 0 at p in {0, 1}.
double binary_entropy(double p);

/// w * log2(1 + x / w), continuously extended by 0 at w = 0.
double scaled_log2(double w, double x);

struct Max1d {
  double x = 0.0;
  double value = 0.0;
};

/// Golden-section search for the maximum of f on [lo, hi] down to an
/// interval width of tol. The endpoints are never evaluated.
Max1d golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                         double tol);

/// Uniform grid of `points` samples (endpoints included), then golden-section
/// refinement inside the cell pair around the best sample. Ties on the grid
/// resolve to the smallest x.
Max1d grid_golden_max(const std::function<double(double)>& f, double lo, double hi,
                      int points, double tol);

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

struct BoxSearchOptions {
  int grid_points = 5;        ///< per free dimension
  int restarts = 8;           ///< number of grid/seed candidates refined
  double initial_step = 0.1;  ///< relative to the interval width
  double tol = 1e-7;          ///< final relative step
  long max_evals = 400000;
};

struct BoxResult {
  std::vector<double> x;
  double value = 0.0;
  bool converged = true;
  long evals = 0;
};

/// Maximizes f over a box. A coarse grid (lexicographic order, first
/// dimension slowest) plus the given seeds supply candidates; the best
/// `restarts` distinct ones are refined by a compass search whose step halves
/// after every unsuccessful sweep. Degenerate intervals fix a coordinate.
BoxResult pattern_search_max(const std::function<double(const std::vector<double>&)>& f,
                             const std::vector<Interval>& box, const BoxSearchOptions& opts,
                             const std::vector<std::vector<double>>& seeds = {});

}  // namespace relaybounds

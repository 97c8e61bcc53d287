#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "takde/batch.hpp"
#include "takde/errors.hpp"

namespace takde {

// Uniform binning over [lo, hi]. Bin k covers [lo + k*width, lo + (k+1)*width),
// with the last bin closed at hi.
struct BinGrid {
  double lo = 0.0;
  double hi = 1.0;
  int m = 1;

  double width() const { return (hi - lo) / m; }

  friend bool operator==(const BinGrid&, const BinGrid&) = default;
};

// Sturges' rule: m = ceil(1 + 3.322 log10 n), where n is the smallest batch
// size among the batches in the current memory.
inline int sturges_bins(std::size_t n) {
  if (n == 0) throw EmptyBatchError("Sturges' rule needs a non-empty batch");
  return int(std::ceil(1.0 + 3.322 * std::log10(double(n))));
}

// Shared grid over the raw range of everything in memory, padded by 1e-9 per
// side. A degenerate range (all retained points identical) collapses to a
// single unit-width bin centred on the value.
inline BinGrid make_common_grid(double data_min, double data_max, int m) {
  if (m < 1) throw InvalidArgumentError("bin count must be >= 1");
  if (!(data_max > data_min)) return {data_min - 0.5, data_min + 0.5, 1};
  return {data_min - 1e-9, data_max + 1e-9, m};
}

// Probability-mass vector over a grid's bins: non-negative, sums to 1.
struct HistogramVector {
  BinGrid grid;
  std::vector<double> mass;
};

inline HistogramVector build_histogram(const Batch& batch, const BinGrid& grid) {
  if (batch.points.empty()) throw EmptyBatchError("cannot histogram an empty batch");
  std::vector<double> mass(std::size_t(grid.m), 0.0);
  const double width = grid.width();
  const int last = grid.m - 1;
  for (double x : batch.points) {
    // Out-of-range points are clamped into the boundary bins; x == hi lands in
    // the closed last bin.
    const int k = x <= grid.lo ? 0 : int((x - grid.lo) / width);
    mass[std::size_t(std::clamp(k, 0, last))] += 1.0;
  }
  const double inv_n = 1.0 / double(batch.points.size());
  for (double& v : mass) v *= inv_n;
  return {grid, std::move(mass)};
}

// Temporal adaptive distance: squared Euclidean distance between the two
// probability-mass vectors. At most 2 for unit-mass histograms.
inline double ta_distance(const HistogramVector& a, const HistogramVector& b) {
  if (!(a.grid == b.grid)) throw GridMismatchError("histograms were built on different grids");
  double dist = 0.0;
  for (std::size_t k = 0; k < a.mass.size(); ++k) {
    const double diff = a.mass[k] - b.mass[k];
    dist += diff * diff;
  }
  return dist;
}

// Histogram approximation of the drift functional R(b_j^(t)): the shared bin
// count times the TA distance to the current batch's histogram. This is the
// plug-in at unit data range; the estimator pipeline uses estimate_r_b below.
inline double approx_r_b(const HistogramVector& hist_j, const HistogramVector& hist_t) {
  return double(hist_j.grid.m) * ta_distance(hist_j, hist_t);
}

// Finite-sample estimate of R(b) = integral of (p_j - p_t)^2 between the
// batches behind two histograms. The squared mass differences are taken at
// density scale (the Riemann sum over the bins, i.e. TA distance divided by
// the bin width), and the multinomial sampling variance of each mass vector
// is subtracted, which makes the estimate unbiased for the binned distance.
// Two batches drawn from the same density therefore estimate zero on average;
// the returned value can be negative.
inline double estimate_r_b(const HistogramVector& hist_j, std::size_t n_j,
                           const HistogramVector& hist_t, std::size_t n_t) {
  if (!(hist_j.grid == hist_t.grid))
    throw GridMismatchError("histograms were built on different grids");
  if (n_j == 0 || n_t == 0) throw EmptyBatchError("estimate_r_b needs non-empty batches");
  const double inv_width = double(hist_j.grid.m) / (hist_j.grid.hi - hist_j.grid.lo);
  const double denom_j = std::max(1.0, double(n_j) - 1.0);
  const double denom_t = std::max(1.0, double(n_t) - 1.0);
  double ta = 0.0;
  double variance = 0.0;
  for (std::size_t k = 0; k < hist_j.mass.size(); ++k) {
    const double yj = hist_j.mass[k];
    const double yt = hist_t.mass[k];
    const double d = yj - yt;
    ta += d * d;
    variance += yj * (1.0 - yj) / denom_j + yt * (1.0 - yt) / denom_t;
  }
  return inv_width * (ta - variance);
}

}  // namespace takde

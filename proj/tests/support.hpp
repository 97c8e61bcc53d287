#pragma once

// Shared helpers for the unit and acceptance suites.

#include <algorithm>
#include <cmath>
#include <vector>

#include "takde/estimator.hpp"
#include "takde/quadrature.hpp"
#include "takde/synthetic.hpp"

namespace takde::test {

inline int odd_nodes(double range, double spacing, int lo = 4001, int hi = 400001) {
  int n = int(std::ceil(range / spacing)) + 1;
  n = std::clamp(n, lo, hi);
  if (n % 2 == 0) ++n;
  return n;
}

// Total mass of a snapshot by Simpson over the data range padded by 8 sigma,
// with node spacing tied to the narrowest kernel.
inline double snapshot_mass(const EstimatorSnapshot& snap) {
  double lo = snap.window.front()->points.front();
  double hi = lo;
  for (const auto& batch : snap.window)
    for (double x : batch->points) {
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
  const double sigma_max = *std::max_element(snap.sigmas.begin(), snap.sigmas.end());
  const double sigma_min = *std::min_element(snap.sigmas.begin(), snap.sigmas.end());
  const double a = lo - 8.0 * sigma_max;
  const double b = hi + 8.0 * sigma_max;
  const Quadrature quad = Quadrature::simpson(a, b, odd_nodes(b - a, sigma_min / 10.0));
  return integrate([&](double x) { return evaluate_at(snap, x); }, quad);
}

// Unit-mass check for an analytic mixture, nodes tied to the narrowest
// component.
inline double mixture_mass(const GaussianMixture& mix) {
  const Quadrature quad =
      Quadrature::simpson(-15.0, 15.0, odd_nodes(30.0, mix.min_stddev() / 10.0, 6001));
  return integrate([&](double x) { return mix.pdf(x); }, quad);
}

// Four-batch stream engineered so the TA distances from the newest batch to
// the previous three are exactly 0.3, 0.5, 0.4 (oldest last). All batches
// have 10 points, so Sturges gives m = 5, and the shared grid spans
// [0.18, 0.82]; points sit at bin centres.
inline std::vector<std::shared_ptr<const Batch>> handwalk_batches() {
  const int counts[4][5] = {
      {8, 0, 0, 0, 2},  // distance 0.4 from the newest
      {9, 0, 0, 0, 1},  // distance 0.5
      {7, 0, 0, 2, 1},  // distance 0.3
      {3, 3, 2, 1, 1},  // newest
  };
  std::vector<std::shared_ptr<const Batch>> batches;
  for (int b = 0; b < 4; ++b) {
    Batch batch;
    batch.t = b;
    for (int k = 0; k < 5; ++k) {
      const double centre = 0.18 + 0.16 * double(k);
      for (int c = 0; c < counts[b][k]; ++c) batch.points.push_back(centre);
    }
    batches.push_back(std::make_shared<const Batch>(std::move(batch)));
  }
  return batches;
}

}  // namespace takde::test

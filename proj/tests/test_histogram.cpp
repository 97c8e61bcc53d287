#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "takde/histogram.hpp"
#include "takde/rng.hpp"

using Catch::Approx;
using namespace takde;

TEST_CASE("sturges bin counts") {
  CHECK(sturges_bins(100) == 8);
  CHECK(sturges_bins(1) == 1);
  CHECK(sturges_bins(10) == 5);
  CHECK(sturges_bins(5) == 4);
  CHECK_THROWS_AS(sturges_bins(0), EmptyBatchError);
}

TEST_CASE("histogram construction") {
  const BinGrid grid{0.0, 1.0, 2};

  const HistogramVector single = build_histogram(Batch{0, {0.5}}, grid);
  CHECK(single.mass == std::vector<double>{0.0, 1.0});

  const HistogramVector split = build_histogram(Batch{0, {0.1, 0.1, 0.9, 0.9}}, grid);
  CHECK(split.mass == std::vector<double>{0.5, 0.5});

  CHECK_THROWS_AS(build_histogram(Batch{0, {}}, grid), EmptyBatchError);
}

TEST_CASE("histogram boundary and clamping behaviour") {
  const BinGrid grid{0.0, 1.0, 4};
  // hi itself lands in the closed last bin, out-of-range points clamp inward
  const HistogramVector h = build_histogram(Batch{0, {1.0, -3.0, 7.0, 0.0}}, grid);
  CHECK(h.mass == std::vector<double>{0.5, 0.0, 0.0, 0.5});
}

TEST_CASE("uniform monte-carlo masses are flat") {
  const BinGrid grid{0.0, 1.0, 10};
  Rng rng(1234);
  Batch batch{0, {}};
  batch.points.reserve(1000);
  for (int i = 0; i < 1000; ++i) batch.points.push_back(rng.uniform01());
  const HistogramVector h = build_histogram(batch, grid);
  double total = 0.0;
  for (double mass : h.mass) {
    CHECK(mass == Approx(0.1).margin(0.05));
    total += mass;
  }
  CHECK(total == Approx(1.0).margin(1e-12));
}

TEST_CASE("duplicating every sample leaves the histogram unchanged") {
  const BinGrid grid{-2.0, 3.0, 7};
  Rng rng(99);
  Batch batch{0, {}};
  for (int i = 0; i < 137; ++i) batch.points.push_back(rng.uniform(-2.0, 3.0));
  Batch doubled{0, batch.points};
  doubled.points.insert(doubled.points.end(), batch.points.begin(), batch.points.end());
  CHECK(build_histogram(batch, grid).mass == build_histogram(doubled, grid).mass);
}

TEST_CASE("degenerate common grid collapses to one bin") {
  const BinGrid grid = make_common_grid(2.5, 2.5, 6);
  CHECK(grid.m == 1);
  CHECK(grid.lo == Approx(2.0));
  CHECK(grid.hi == Approx(3.0));
  const BinGrid normal = make_common_grid(0.0, 1.0, 6);
  CHECK(normal.m == 6);
  CHECK(normal.lo < 0.0);
  CHECK(normal.hi > 1.0);
}

TEST_CASE("ta distance examples") {
  const BinGrid grid{0.0, 1.0, 2};
  const HistogramVector a{grid, {1.0, 0.0}};
  const HistogramVector b{grid, {0.0, 1.0}};
  const HistogramVector c{grid, {0.5, 0.5}};
  const HistogramVector d{grid, {0.25, 0.75}};

  CHECK(ta_distance(a, a) == 0.0);
  CHECK(ta_distance(a, b) == Approx(2.0).epsilon(1e-15));
  CHECK(ta_distance(c, d) == Approx(0.125).epsilon(1e-15));
  CHECK(ta_distance(c, d) == ta_distance(d, c));

  const HistogramVector other{BinGrid{0.0, 2.0, 2}, {1.0, 0.0}};
  CHECK_THROWS_AS(ta_distance(a, other), GridMismatchError);
}

TEST_CASE("ta distance stays within [0, 2] for unit-mass vectors") {
  Rng rng(31);
  const BinGrid grid{0.0, 1.0, 8};
  auto random_mass = [&]() {
    std::vector<double> mass(8);
    double total = 0.0;
    for (double& v : mass) {
      v = -std::log(1.0 - rng.uniform01());
      total += v;
    }
    for (double& v : mass) v /= total;
    return mass;
  };
  for (int i = 0; i < 500; ++i) {
    const HistogramVector a{grid, random_mass()};
    const HistogramVector b{grid, random_mass()};
    const double dist = ta_distance(a, b);
    CHECK(dist > 0.0);  // zero only for equal vectors
    CHECK(dist <= 2.0);
    CHECK(dist == ta_distance(b, a));
    CHECK(ta_distance(a, a) == 0.0);
  }
}

TEST_CASE("rhat approximation scales the ta distance by the bin count") {
  const BinGrid grid8{0.0, 1.0, 8};
  HistogramVector a{grid8, std::vector<double>(8, 0.125)};
  HistogramVector b = a;
  b.mass[0] += 0.25;
  b.mass[1] -= 0.25;
  CHECK(ta_distance(a, b) == Approx(0.125).epsilon(1e-15));
  CHECK(approx_r_b(a, b) == Approx(1.0).epsilon(1e-15));
  CHECK(approx_r_b(a, a) == 0.0);

  const BinGrid grid5{0.0, 1.0, 5};
  const HistogramVector e{grid5, {1.0, 0.0, 0.0, 0.0, 0.0}};
  const HistogramVector f{grid5, {0.0, 0.0, 0.0, 0.0, 1.0}};
  CHECK(approx_r_b(e, f) == Approx(10.0).epsilon(1e-15));
}

TEST_CASE("debiased drift estimate") {
  const BinGrid grid{0.0, 2.0, 4};  // bin width 0.5, so the density scale is m/range = 2
  const HistogramVector a{grid, {0.5, 0.5, 0.0, 0.0}};
  const HistogramVector b{grid, {0.0, 0.0, 0.5, 0.5}};

  // hand evaluation: ta = 4 * 0.25 = 1; each vector's variance term is
  // 2 * 0.5*0.5/(n-1); density scale multiplies by 2
  const double expected = 2.0 * (1.0 - 2.0 * (0.25 / 9.0) - 2.0 * (0.25 / 9.0));
  CHECK(estimate_r_b(a, 10, b, 10) == Approx(expected).margin(1e-12));

  // identical histograms estimate at most zero (pure sampling variance)
  CHECK(estimate_r_b(a, 10, a, 10) <= 0.0);
  // singleton batches have unit mass vectors, so their variance term vanishes
  const HistogramVector point{grid, {1.0, 0.0, 0.0, 0.0}};
  CHECK(estimate_r_b(point, 1, point, 1) == 0.0);

  const HistogramVector other{BinGrid{0.0, 1.0, 4}, {0.25, 0.25, 0.25, 0.25}};
  CHECK_THROWS_AS(estimate_r_b(a, 10, other, 10), GridMismatchError);
  CHECK_THROWS_AS(estimate_r_b(a, 0, b, 10), EmptyBatchError);
}

TEST_CASE("debiased drift estimate is unbiased for the binned distance") {
  // same density twice: the estimate averages near zero instead of the
  // positive sampling floor the raw plug-in carries
  Rng rng(777);
  const BinGrid grid{0.0, 1.0, 5};
  double mean_debiased = 0.0;
  double mean_plugin = 0.0;
  const int trials = 5000;  // per-trial sd is about 0.48, so the mean has se 0.007
  const std::size_t n = 12;
  for (int trial = 0; trial < trials; ++trial) {
    Batch batch_a{0, {}};
    Batch batch_b{1, {}};
    for (std::size_t i = 0; i < n; ++i) batch_a.points.push_back(rng.uniform01());
    for (std::size_t i = 0; i < n; ++i) batch_b.points.push_back(rng.uniform01());
    const HistogramVector ha = build_histogram(batch_a, grid);
    const HistogramVector hb = build_histogram(batch_b, grid);
    mean_debiased += estimate_r_b(ha, n, hb, n);
    mean_plugin += double(grid.m) * ta_distance(ha, hb);
  }
  mean_debiased /= trials;
  mean_plugin /= trials;
  CHECK(std::abs(mean_debiased) < 0.025);  // centred on the true value 0
  CHECK(mean_plugin > 0.4);                // the raw plug-in sits on its noise floor
}

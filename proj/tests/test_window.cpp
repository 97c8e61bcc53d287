#include <catch2/catch_amalgamated.hpp>

#include <memory>
#include <vector>

#include "support.hpp"
#include "takde/rng.hpp"
#include "takde/window.hpp"

using Catch::Approx;
using namespace takde;

namespace {

std::shared_ptr<const Batch> gaussian_batch(std::int64_t t, int n, Rng& rng, double shift = 0.0) {
  Batch batch{t, {}};
  batch.points.reserve(std::size_t(n));
  for (int i = 0; i < n; ++i) batch.points.push_back(shift + rng.normal());
  return std::make_shared<const Batch>(std::move(batch));
}

}  // namespace

TEST_CASE("cutoff loop hand-walk") {
  // distances newest-first, self-distance included
  const std::vector<double> dists = {0.0, 0.3, 0.5, 0.4};
  CHECK(cutoff_window_size(dists, {1.0, 16}) == 3);
  CHECK(cutoff_window_size(dists, {0.0, 16}) == 1);
  CHECK(cutoff_window_size(dists, {10.0, 16}) == 4);
  CHECK(cutoff_window_size(dists, {10.0, 2}) == 2);
  // tie at the cutoff keeps the batch
  CHECK(cutoff_window_size(std::vector<double>{0.0, 0.8, 0.2, 0.1}, {1.0, 16}) == 3);
  CHECK_THROWS_AS(cutoff_window_size(std::vector<double>{}, {1.0, 16}), EmptyStreamError);
  CHECK_THROWS_AS(cutoff_window_size(dists, {1.0, 0}), InvalidArgumentError);
  CHECK_THROWS_AS(cutoff_window_size(dists, {-0.5, 4}), InvalidArgumentError);
}

TEST_CASE("identical batches hit the hard cap") {
  std::vector<std::shared_ptr<const Batch>> raw;
  for (int t = 0; t < 10; ++t)
    raw.push_back(std::make_shared<const Batch>(Batch{t, {0.1, 0.4, 0.7, 0.9, 0.2}}));
  const WindowState state = select_window(raw, {1.0, 5});
  CHECK(state.window_size == 5);
  REQUIRE(state.r_hat.size() == 5);
  for (double r : state.r_hat) CHECK(r == 0.0);
  CHECK(state.batches.back() == raw.back());
}

TEST_CASE("zero cutoff with drifting data keeps only the current batch") {
  // alternating disjoint supports: every adjacent TA distance is exactly 2
  Rng rng(5);
  std::vector<std::shared_ptr<const Batch>> raw;
  for (int t = 0; t < 6; ++t) {
    Batch batch{t, {}};
    const double base = (t % 2 == 0) ? 0.0 : 10.0;
    for (int i = 0; i < 25; ++i) batch.points.push_back(base + rng.uniform01());
    raw.push_back(std::make_shared<const Batch>(std::move(batch)));
  }
  const WindowState state = select_window(raw, {0.0, 16});
  CHECK(state.window_size == 1);
  CHECK(state.batches.size() == 1);
  CHECK(state.batches[0] == raw.back());
  CHECK(state.r_hat == std::vector<double>{0.0});
}

TEST_CASE("engineered stream reproduces the three-distance hand-walk") {
  const auto raw = takde::test::handwalk_batches();
  const WindowState state = select_window(raw, {1.0, 16});
  REQUIRE(state.window_size == 3);
  REQUIRE(state.histograms.size() == 3);
  CHECK(state.grid.m == 5);
  CHECK(state.batches[2] == raw[3]);
  CHECK(state.batches[0] == raw[1]);

  // drift estimates recomputed from the engineered mass vectors (n = 10 each):
  // density-scale TA distance minus the multinomial variance of both vectors
  const double inv_width = 5.0 / (state.grid.hi - state.grid.lo);
  auto variance10 = [](std::initializer_list<double> mass) {
    double v = 0.0;
    for (double y : mass) v += y * (1.0 - y) / 9.0;
    return v;
  };
  auto ta = [](std::initializer_list<double> a, std::initializer_list<double> b) {
    double d2 = 0.0;
    auto ib = b.begin();
    for (double ya : a) {
      const double d = ya - *ib++;
      d2 += d * d;
    }
    return d2;
  };
  const std::initializer_list<double> newest = {0.3, 0.3, 0.2, 0.1, 0.1};
  const std::initializer_list<double> mid = {0.7, 0.0, 0.0, 0.2, 0.1};    // distance 0.3
  const std::initializer_list<double> oldest = {0.9, 0.0, 0.0, 0.0, 0.1};  // distance 0.5
  const double expect_oldest =
      inv_width * (ta(oldest, newest) - variance10(oldest) - variance10(newest));
  const double expect_mid =
      inv_width * (ta(mid, newest) - variance10(mid) - variance10(newest));
  CHECK(state.r_hat[0] == Approx(expect_oldest).margin(1e-12));
  CHECK(state.r_hat[1] == Approx(expect_mid).margin(1e-12));
  CHECK(state.r_hat[2] == 0.0);
  CHECK(state.r_hat[0] > state.r_hat[1]);  // already non-increasing, pooling is a no-op
}

TEST_CASE("both cutoff inequalities hold when the window is interior") {
  const auto raw = takde::test::handwalk_batches();
  const WindowConfig cfg{1.0, 16};
  const WindowState state = select_window(raw, cfg);
  // T_t < hard cap and T_t < available, so the selected size must satisfy
  // sum_{k=1}^{T} d_k <= s < sum_{k=1}^{T+1} d_k with d = (0.3, 0.5, 0.4).
  const double d[3] = {0.3, 0.5, 0.4};
  double within = 0.0;
  for (int k = 0; k < state.window_size - 1; ++k) within += d[k];
  CHECK(within <= cfg.cutoff_s);
  CHECK(within + d[state.window_size - 1] > cfg.cutoff_s);
}

TEST_CASE("larger cutoff never shrinks the window") {
  Rng rng(17);
  std::vector<std::shared_ptr<const Batch>> raw;
  for (int t = 0; t < 12; ++t) raw.push_back(gaussian_batch(t, 15, rng, 0.25 * double(t)));
  int previous = 0;
  for (double s : {0.0, 0.1, 0.3, 0.7, 1.5, 3.0, 10.0}) {
    const int t_window = select_window(raw, {s, 12}).window_size;
    CHECK(t_window >= previous);
    previous = t_window;
  }
}

TEST_CASE("window state bookkeeping") {
  Rng rng(23);
  std::vector<std::shared_ptr<const Batch>> raw;
  for (int t = 0; t < 9; ++t) raw.push_back(gaussian_batch(t, 25, rng, 0.1 * double(t)));
  const WindowState state = select_window(raw, {2.0, 6});
  CHECK(state.window_size >= 1);
  CHECK(state.window_size <= 6);
  CHECK(int(state.batches.size()) == state.window_size);
  CHECK(int(state.histograms.size()) == state.window_size);
  CHECK(int(state.r_hat.size()) == state.window_size);
  CHECK(state.r_hat.back() == 0.0);
  for (double r : state.r_hat) CHECK(r >= 0.0);
  for (std::size_t j = 1; j < state.r_hat.size(); ++j)
    CHECK(state.r_hat[j - 1] >= state.r_hat[j]);  // pooled fit is non-increasing
  // retained batches are the newest suffix, shared rather than copied
  for (int j = 0; j < state.window_size; ++j)
    CHECK(state.batches[std::size_t(j)] ==
          raw[raw.size() - std::size_t(state.window_size) + std::size_t(j)]);
  CHECK_THROWS_AS(select_window({}, {1.0, 4}), EmptyStreamError);
}

TEST_CASE("isotonic pooling") {
  std::vector<double> already = {3.0, 2.0, 1.0};
  detail::isotonic_nonincreasing(already);
  CHECK(already == std::vector<double>{3.0, 2.0, 1.0});

  std::vector<double> violating = {1.0, 3.0, 2.0};
  detail::isotonic_nonincreasing(violating);
  CHECK(violating == std::vector<double>{2.0, 2.0, 2.0});

  std::vector<double> partial = {5.0, 1.0, 3.0, 0.5};
  detail::isotonic_nonincreasing(partial);
  CHECK(partial == std::vector<double>{5.0, 2.0, 2.0, 0.5});

  std::vector<double> single = {4.0};
  detail::isotonic_nonincreasing(single);
  CHECK(single == std::vector<double>{4.0});
}

TEST_CASE("degenerate identical data yields a single-bin grid and zero drift") {
  std::vector<std::shared_ptr<const Batch>> raw;
  for (int t = 0; t < 4; ++t)
    raw.push_back(std::make_shared<const Batch>(Batch{t, {3.0, 3.0, 3.0}}));
  const WindowState state = select_window(raw, {0.5, 8});
  CHECK(state.grid.m == 1);
  CHECK(state.window_size == 4);
  for (double r : state.r_hat) CHECK(r == 0.0);
}

#pragma once

#include <algorithm>
#include <limits>
#include <memory>
#include <span>
#include <vector>

#include "takde/histogram.hpp"

namespace takde {

struct WindowConfig {
  double cutoff_s = 1.0;  // cumulative TA-distance threshold
  int hard_cap_w = 16;    // most batches ever kept in memory
};

inline void validate(const WindowConfig& cfg) {
  if (cfg.hard_cap_w < 1) throw InvalidArgumentError("hard cap must be >= 1");
  if (!(cfg.cutoff_s >= 0.0)) throw InvalidArgumentError("cutoff must be >= 0");
}

// Retained batches for one time stamp, oldest first, together with the
// histograms they were selected on and the per-batch drift estimates of
// R(b_j), the integrated squared difference against the current density.
// The newest batch is always present and its r_hat entry is exactly 0.
struct WindowState {
  std::vector<std::shared_ptr<const Batch>> batches;
  std::vector<HistogramVector> histograms;
  std::vector<double> r_hat;
  int window_size = 0;  // T_t
  BinGrid grid;         // shared grid used for this step
};

namespace detail {

// Least-squares non-increasing fit (pool adjacent violators).
inline void isotonic_nonincreasing(std::vector<double>& values) {
  const std::size_t n = values.size();
  if (n < 2) return;
  std::vector<double> level;
  std::vector<double> weight;
  std::vector<std::size_t> count;
  level.reserve(n);
  weight.reserve(n);
  count.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    level.push_back(values[i]);
    weight.push_back(1.0);
    count.push_back(1);
    while (level.size() > 1 && level[level.size() - 2] < level.back()) {
      const std::size_t last = level.size() - 1;
      const double merged_weight = weight[last - 1] + weight[last];
      level[last - 1] =
          (level[last - 1] * weight[last - 1] + level[last] * weight[last]) / merged_weight;
      weight[last - 1] = merged_weight;
      count[last - 1] += count[last];
      level.pop_back();
      weight.pop_back();
      count.pop_back();
    }
  }
  std::size_t pos = 0;
  for (std::size_t b = 0; b < level.size(); ++b)
    for (std::size_t i = 0; i < count[b]; ++i) values[pos++] = level[b];
}

}  // namespace detail

// Core cutoff loop. distances_to_current[k] is the TA distance between the
// current batch and the batch k steps back, so entry 0 is the self-distance
// (zero). Accumulates the running distance walking backwards and stops before
// the first batch that pushes it strictly past the cutoff; a tie at exactly
// the cutoff keeps the batch. The result is additionally capped by the hard
// cap and by the number of batches available.
inline int cutoff_window_size(std::span<const double> distances_to_current,
                              const WindowConfig& cfg) {
  validate(cfg);
  if (distances_to_current.empty()) throw EmptyStreamError("no current batch");
  const int limit = int(std::min(distances_to_current.size(), std::size_t(cfg.hard_cap_w)));
  double running = 0.0;
  int t_window = 0;
  for (int k = 0; k < limit; ++k) {
    running += distances_to_current[std::size_t(k)];
    if (running > cfg.cutoff_s) break;
    ++t_window;
  }
  return std::max(t_window, 1);  // the current batch is always retained
}

// Window generator. Takes the raw memory (oldest first, current batch last;
// anything beyond the hard cap is ignored), rebuilds comparable histograms on
// one shared grid, and applies the cutoff loop. The grid spans the raw range
// of the candidate memory and its bin count comes from Sturges' rule on the
// smallest candidate batch.
inline WindowState select_window(std::span<const std::shared_ptr<const Batch>> raw_batches,
                                 const WindowConfig& cfg) {
  validate(cfg);
  if (raw_batches.empty()) throw EmptyStreamError("select_window requires the current batch");

  const std::size_t n_candidates =
      std::min(raw_batches.size(), std::size_t(cfg.hard_cap_w));
  const auto candidates = raw_batches.last(n_candidates);

  std::size_t n_min = std::numeric_limits<std::size_t>::max();
  double data_min = std::numeric_limits<double>::infinity();
  double data_max = -std::numeric_limits<double>::infinity();
  for (const auto& batch : candidates) {
    if (!batch || batch->points.empty()) throw EmptyBatchError("empty batch in stream memory");
    n_min = std::min(n_min, batch->points.size());
    for (double x : batch->points) {
      data_min = std::min(data_min, x);
      data_max = std::max(data_max, x);
    }
  }

  const BinGrid grid = make_common_grid(data_min, data_max, sturges_bins(n_min));

  std::vector<HistogramVector> hists;
  hists.reserve(n_candidates);
  for (const auto& batch : candidates) hists.push_back(build_histogram(*batch, grid));

  const HistogramVector& hist_t = hists.back();
  std::vector<double> dist_to_current(n_candidates);
  for (std::size_t k = 0; k < n_candidates; ++k)
    dist_to_current[k] = ta_distance(hists[n_candidates - 1 - k], hist_t);

  const int t_window = cutoff_window_size(dist_to_current, cfg);

  WindowState state;
  state.window_size = t_window;
  state.grid = grid;
  state.batches.assign(candidates.end() - t_window, candidates.end());
  state.histograms.assign(hists.end() - t_window, hists.end());

  // Drift estimates for the retained batches: debiased density-scale pair
  // estimates, pooled with a non-increasing-in-recency fit (true drift grows
  // with batch age, so pooling suppresses the per-pair sampling noise), then
  // clamped at zero. The newest batch is exactly zero by definition.
  state.r_hat.assign(std::size_t(t_window), 0.0);
  if (t_window > 1) {
    std::vector<double> older(std::size_t(t_window - 1));
    for (int j = 0; j + 1 < t_window; ++j)
      older[std::size_t(j)] =
          estimate_r_b(state.histograms[std::size_t(j)],
                       state.batches[std::size_t(j)]->points.size(), hist_t,
                       state.batches.back()->points.size());
    detail::isotonic_nonincreasing(older);
    for (int j = 0; j + 1 < t_window; ++j)
      state.r_hat[std::size_t(j)] = std::max(0.0, older[std::size_t(j)]);
  }
  return state;
}

}  // namespace takde

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "takde/bandwidth.hpp"
#include "takde/batch.hpp"
#include "takde/kernel.hpp"
#include "takde/weights.hpp"
#include "takde/window.hpp"

namespace takde {

enum class WeightScheme { takde, uniform, exponential };

struct EstimatorConfig {
  KernelSpec kernel = KernelSpec::gaussian();
  WindowConfig window;
  SmoothnessConfig smoothness;
  WeightScheme scheme = WeightScheme::takde;
  double decay = 0.9;  // exponential scheme only
};

// Immutable fitted estimator for one time stamp: the retained batches
// (shared with the stream memory, never mutated), their bandwidths, and the
// weight sequence. All three run oldest-to-newest with equal length T_t.
struct EstimatorSnapshot {
  std::int64_t t = 0;
  KernelSpec kernel;
  std::vector<std::shared_ptr<const Batch>> window;
  std::vector<double> sigmas;
  WeightVector weights;

  int window_size() const noexcept { return int(window.size()); }
};

// One step of the full pipeline: window generator, then bandwidth generator,
// then weight generator. prior_raw holds the previous raw batches (oldest
// first, at most hard_cap_w are used) with consecutive time stamps ending
// just before new_batch.t.
inline EstimatorSnapshot fit_step(std::span<const std::shared_ptr<const Batch>> prior_raw,
                                  Batch new_batch, const EstimatorConfig& cfg) {
  if (new_batch.points.empty()) throw EmptyBatchError("fit_step: empty batch");
  for (std::size_t i = 0; i < prior_raw.size(); ++i) {
    if (!prior_raw[i] || prior_raw[i]->points.empty())
      throw EmptyBatchError("fit_step: empty batch in prior memory");
    if (i > 0 && prior_raw[i]->t != prior_raw[i - 1]->t + 1)
      throw InvalidArgumentError("fit_step: prior time stamps must be contiguous");
  }
  if (!prior_raw.empty() && new_batch.t != prior_raw.back()->t + 1)
    throw InvalidArgumentError("fit_step: new batch must extend the stream by one step");

  auto current = std::make_shared<const Batch>(std::move(new_batch));
  std::vector<std::shared_ptr<const Batch>> memory(prior_raw.begin(), prior_raw.end());
  memory.push_back(current);

  WindowState window = select_window(memory, cfg.window);

  const std::size_t t_len = window.batches.size();
  std::vector<double> sigmas(t_len);
  std::vector<std::size_t> ns(t_len);
  for (std::size_t j = 0; j < t_len; ++j) {
    ns[j] = window.batches[j]->points.size();
    sigmas[j] = batch_bandwidth(sample_std(*window.batches[j]), ns[j], window.window_size,
                                cfg.smoothness, cfg.kernel);
  }

  WeightVector weights;
  switch (cfg.scheme) {
    case WeightScheme::takde:
      weights = takde_weights(sigmas, ns, window.r_hat, cfg.kernel.r_of_k);
      break;
    case WeightScheme::uniform:
      weights = uniform_weights(window.window_size);
      break;
    case WeightScheme::exponential:
      weights = exponential_weights(window.window_size, cfg.decay);
      break;
  }

  return {current->t, cfg.kernel, std::move(window.batches), std::move(sigmas),
          std::move(weights)};
}

// Streaming front end owning the raw-batch memory; at most hard_cap_w batches
// survive between steps, so retained raw points stay bounded regardless of
// stream length.
class StreamEstimator {
 public:
  explicit StreamEstimator(EstimatorConfig cfg) : cfg_(std::move(cfg)) {
    validate(cfg_.window);
    validate(cfg_.smoothness);
  }

  EstimatorSnapshot step(Batch new_batch) {
    EstimatorSnapshot snap = fit_step(memory_, std::move(new_batch), cfg_);
    memory_.push_back(snap.window.back());  // the newest batch is always retained
    if (int(memory_.size()) > cfg_.window.hard_cap_w)
      memory_.erase(memory_.begin(),
                    memory_.end() - std::ptrdiff_t(cfg_.window.hard_cap_w));
    return snap;
  }

  const EstimatorConfig& config() const noexcept { return cfg_; }
  std::span<const std::shared_ptr<const Batch>> memory() const noexcept { return memory_; }

 private:
  EstimatorConfig cfg_;
  std::vector<std::shared_ptr<const Batch>> memory_;
};

// h_t(x) = sum_j alpha_j (1/n_j) sum_i K_sigma_j(x - x_i).
inline double evaluate_at(const EstimatorSnapshot& snap, double x) {
  double density = 0.0;
  for (std::size_t j = 0; j < snap.window.size(); ++j) {
    const std::vector<double>& pts = snap.window[j]->points;
    const double inv_sigma = 1.0 / snap.sigmas[j];
    double acc = 0.0;
    for (double xi : pts) acc += eval_kernel(snap.kernel, (x - xi) * inv_sigma);
    density += snap.weights.alphas[j] * inv_sigma * acc / double(pts.size());
  }
  return density;
}

inline std::vector<double> evaluate(const EstimatorSnapshot& snap, std::span<const double> xs) {
  std::vector<double> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = evaluate_at(snap, xs[i]);
  return out;
}

// Reported when every kernel term has underflowed past what the shifted
// accumulation can represent (e.g. an infinite test point).
inline constexpr double kLogUnderflowSentinel = -1e300;

// log h_t(x) with an online max-shifted accumulation over every kernel term,
// so far-tail points produce large negative finite values instead of -inf.
inline double log_density_at(const EstimatorSnapshot& snap, double x) {
  double shift = -std::numeric_limits<double>::infinity();
  double acc = 0.0;
  for (std::size_t j = 0; j < snap.window.size(); ++j) {
    const double alpha = snap.weights.alphas[j];
    if (!(alpha > 0.0)) continue;
    const std::vector<double>& pts = snap.window[j]->points;
    const double inv_sigma = 1.0 / snap.sigmas[j];
    const double log_pref = std::log(alpha * inv_sigma / double(pts.size()));
    for (double xi : pts) {
      const double expo = log_pref + log_eval_kernel(snap.kernel, (x - xi) * inv_sigma);
      if (!(expo > -std::numeric_limits<double>::infinity())) continue;
      if (expo <= shift) {
        acc += std::exp(expo - shift);
      } else {
        acc = acc * std::exp(shift - expo) + 1.0;
        shift = expo;
      }
    }
  }
  if (!(shift > -std::numeric_limits<double>::infinity())) return kLogUnderflowSentinel;
  return shift + std::log(acc);
}

// Mean of log h_t over held-out points; the benchmark accuracy metric.
inline double mean_log_likelihood(const EstimatorSnapshot& snap,
                                  std::span<const double> test_points) {
  if (test_points.empty()) throw InvalidArgumentError("mean_log_likelihood needs test points");
  double sum = 0.0;
  for (double x : test_points) sum += log_density_at(snap, x);
  return sum / double(test_points.size());
}

// Static full-history baseline: one pooled batch with the static normal-rule
// bandwidth sigma = c sigma_hat n^(-1/5). Shares every numeric path with
// fit_step at T_t = 1, so a cutoff of zero reproduces it exactly.
inline EstimatorSnapshot static_kde_fit(std::vector<double> all_points, double c,
                                        const KernelSpec& kernel, double min_sigma = 1e-3) {
  if (all_points.empty()) throw EmptyBatchError("static_kde_fit: no points");
  auto pooled = std::make_shared<const Batch>(Batch{0, std::move(all_points)});
  const SmoothnessConfig smoothness{SmoothnessMode::explicit_c, c, min_sigma};
  EstimatorSnapshot snap;
  snap.t = pooled->t;
  snap.kernel = kernel;
  snap.sigmas = {batch_bandwidth(sample_std(*pooled), pooled->points.size(), 1, smoothness, kernel)};
  snap.window = {std::move(pooled)};
  snap.weights = uniform_weights(1);
  return snap;
}

}  // namespace takde

#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "takde/errors.hpp"

namespace takde {

// Simplex weights over the retained batches, oldest first.
struct WeightVector {
  std::vector<double> alphas;

  std::size_t size() const noexcept { return alphas.size(); }
};

// AMISE-optimal weights: alpha_j = (1/S_j) / sum_i (1/S_i) with
//   S_j = 5 R(K) / (4 n_j sigma_j) + (2 T_t - 1) rhat_j.
// Inputs are aligned oldest-to-newest; the newest batch has rhat = 0.
inline WeightVector takde_weights(std::span<const double> sigmas,
                                  std::span<const std::size_t> ns,
                                  std::span<const double> r_hats, double r_of_k) {
  const std::size_t t_window = sigmas.size();
  if (t_window == 0) throw InvalidArgumentError("takde_weights needs at least one batch");
  if (ns.size() != t_window || r_hats.size() != t_window)
    throw InvalidArgumentError("takde_weights: sequence length mismatch");
  if (!(r_of_k > 0.0)) throw InvalidArgumentError("R(K) must be positive");

  const double window_factor = double(2 * t_window - 1);
  std::vector<double> inv_s(t_window);
  double inv_sum = 0.0;
  for (std::size_t j = 0; j < t_window; ++j) {
    if (!(sigmas[j] > 0.0)) throw InvalidBandwidthError("bandwidths must be positive");
    if (ns[j] < 1) throw InvalidArgumentError("batch sizes must be >= 1");
    if (!(r_hats[j] >= 0.0)) throw InvalidArgumentError("rhat values must be non-negative");
    const double s_j =
        5.0 * r_of_k / (4.0 * double(ns[j]) * sigmas[j]) + window_factor * r_hats[j];
    inv_s[j] = 1.0 / s_j;
    inv_sum += inv_s[j];
  }

  WeightVector weights;
  weights.alphas.resize(t_window);
  for (std::size_t j = 0; j < t_window; ++j) weights.alphas[j] = inv_s[j] / inv_sum;
  return weights;
}

inline WeightVector uniform_weights(int t_window) {
  if (t_window < 1) throw InvalidArgumentError("window size must be >= 1");
  return {std::vector<double>(std::size_t(t_window), 1.0 / double(t_window))};
}

// Geometric decay backwards from the newest batch: newest gets (1 - e), each
// step back multiplies by e, and the oldest batch absorbs the remaining
// e^(T-1) so the sequence sums to exactly 1.
inline WeightVector exponential_weights(int t_window, double decay_e) {
  if (t_window < 1) throw InvalidArgumentError("window size must be >= 1");
  if (!(decay_e > 0.0 && decay_e < 1.0))
    throw InvalidArgumentError("decay ratio must lie in (0, 1)");
  WeightVector weights;
  weights.alphas.resize(std::size_t(t_window));
  weights.alphas[0] = std::pow(decay_e, double(t_window - 1));
  for (int p = 1; p < t_window; ++p)
    weights.alphas[std::size_t(p)] = (1.0 - decay_e) * std::pow(decay_e, double(t_window - 1 - p));
  return weights;
}

}  // namespace takde

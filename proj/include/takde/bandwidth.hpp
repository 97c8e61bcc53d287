#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>

#include "takde/batch.hpp"
#include "takde/errors.hpp"
#include "takde/kernel.hpp"

namespace takde {

enum class SmoothnessMode {
  explicit_c,       // user-supplied smoothness parameter
  normal_rule,      // Gaussian-reference plug-in computed from the kernel constants
  oversmooth_rule,  // maximal-smoothing upper bound computed from the kernel constants
  paper_literal_normal,      // fixed (32/3)^(1/5), for comparison runs
  paper_literal_oversmooth,  // fixed (972/(35 sqrt(pi)))^(1/5), for comparison runs
};

struct SmoothnessConfig {
  SmoothnessMode mode = SmoothnessMode::normal_rule;
  double c = 1.0;           // read only in explicit_c mode
  double min_sigma = 1e-3;  // floor for degenerate batches (constant data, n = 1)
};

inline void validate(const SmoothnessConfig& cfg) {
  if (!(cfg.min_sigma > 0.0)) throw InvalidArgumentError("min_sigma must be positive");
  if (cfg.mode == SmoothnessMode::explicit_c && !(cfg.c > 0.0))
    throw InvalidArgumentError("smoothness parameter must be positive");
}

// Unbiased (n-1 denominator) sample standard deviation; 0 for a singleton
// batch or constant data.
inline double sample_std(const Batch& batch) {
  const std::size_t n = batch.points.size();
  if (n == 0) throw EmptyBatchError("sample_std of an empty batch");
  if (n == 1) return 0.0;
  double mean = 0.0;
  for (double x : batch.points) mean += x;
  mean /= double(n);
  double ss = 0.0;
  for (double x : batch.points) {
    const double d = x - mean;
    ss += d * d;
  }
  return std::sqrt(ss / double(n - 1));
}

// c = [8 sqrt(pi) R(K) / (3 mu2^2)]^(1/5); 1.0592238 for the Gaussian kernel.
inline double normal_rule_c(const KernelSpec& kernel) {
  return std::pow(
      8.0 * std::sqrt(std::numbers::pi) * kernel.r_of_k / (3.0 * kernel.mu2 * kernel.mu2), 0.2);
}

// c = [243 R(K) / (35 mu2^2)]^(1/5); 1.1438963 for the Gaussian kernel.
inline double oversmooth_c(const KernelSpec& kernel) {
  return std::pow(243.0 * kernel.r_of_k / (35.0 * kernel.mu2 * kernel.mu2), 0.2);
}

inline double paper_literal_normal_c() { return std::pow(32.0 / 3.0, 0.2); }

inline double paper_literal_oversmooth_c() {
  return std::pow(972.0 / (35.0 * std::sqrt(std::numbers::pi)), 0.2);
}

inline double smoothness_c(const SmoothnessConfig& cfg, const KernelSpec& kernel) {
  validate(cfg);
  switch (cfg.mode) {
    case SmoothnessMode::explicit_c:
      return cfg.c;
    case SmoothnessMode::normal_rule:
      return normal_rule_c(kernel);
    case SmoothnessMode::oversmooth_rule:
      return oversmooth_c(kernel);
    case SmoothnessMode::paper_literal_normal:
      return paper_literal_normal_c();
    case SmoothnessMode::paper_literal_oversmooth:
      return paper_literal_oversmooth_c();
  }
  throw InvalidArgumentError("unknown smoothness mode");
}

// Per-batch bandwidth sigma_j = c sigma_hat_j / ((2 T_t - 1) n_j)^(1/5),
// floored at min_sigma. T_t = 1 recovers the static normal rule exactly.
inline double batch_bandwidth(double sigma_hat, std::size_t n, int t_window,
                              const SmoothnessConfig& cfg, const KernelSpec& kernel) {
  if (n < 1) throw InvalidArgumentError("batch size must be >= 1");
  if (t_window < 1) throw InvalidArgumentError("window size must be >= 1");
  if (!(sigma_hat >= 0.0)) throw InvalidArgumentError("sigma_hat must be non-negative");
  const double c = smoothness_c(cfg, kernel);
  const double sigma = c * sigma_hat * std::pow(double(2 * t_window - 1) * double(n), -0.2);
  return std::max(cfg.min_sigma, sigma);
}

}  // namespace takde

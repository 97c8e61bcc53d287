#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "takde/errors.hpp"
#include "takde/kernel.hpp"
#include "takde/quadrature.hpp"
#include "takde/rng.hpp"
#include "takde/synthetic.hpp"

namespace takde {

// Worst-case AMISE of a sliding-window estimator with the given deterministic
// weight/bandwidth sequences:
//
//   sum_i alpha_i^2 R(K) / (n_i sigma_i)
//   + (2 T - 1) sum_i alpha_i^2 R(b_i)
//   + ((2 T - 1)/4) mu2^2 sum_i alpha_i^2 sigma_i^4 R(p_i'')
//
// Sequences run oldest-to-newest; the newest drift functional R(b_t) is zero
// by definition.
inline double amise_upper_bound(std::span<const double> alphas, std::span<const double> sigmas,
                                std::span<const std::size_t> ns, std::span<const double> r_b,
                                std::span<const double> r_pdd, const KernelSpec& kernel) {
  const std::size_t t_window = alphas.size();
  if (t_window == 0 || sigmas.size() != t_window || ns.size() != t_window ||
      r_b.size() != t_window || r_pdd.size() != t_window)
    throw InvalidArgumentError("amise_upper_bound: sequence length mismatch");

  double alpha_sum = 0.0;
  for (double a : alphas) {
    if (!(a >= 0.0)) throw InvalidArgumentError("weights must be non-negative");
    alpha_sum += a;
  }
  if (std::abs(alpha_sum - 1.0) > 1e-9)
    throw InvalidArgumentError("weights must sum to 1");
  if (!(r_b.back() <= 1e-12))
    throw InvalidArgumentError("the newest drift functional must be 0");

  const double window_factor = double(2 * t_window - 1);
  double variance_term = 0.0;
  double drift_term = 0.0;
  double curvature_term = 0.0;
  for (std::size_t i = 0; i < t_window; ++i) {
    if (!(sigmas[i] > 0.0)) throw InvalidBandwidthError("bandwidths must be positive");
    if (ns[i] < 1) throw InvalidArgumentError("batch sizes must be >= 1");
    if (!(r_b[i] >= 0.0) || !(r_pdd[i] >= 0.0))
      throw InvalidArgumentError("R functionals must be non-negative");
    const double a2 = alphas[i] * alphas[i];
    variance_term += a2 / (double(ns[i]) * sigmas[i]);
    drift_term += a2 * r_b[i];
    const double s2 = sigmas[i] * sigmas[i];
    curvature_term += a2 * s2 * s2 * r_pdd[i];
  }
  return kernel.r_of_k * variance_term + window_factor * drift_term +
         0.25 * window_factor * kernel.mu2 * kernel.mu2 * curvature_term;
}

// Quadrature-exact drift functional R(b_i^(t)) = integral of (p_i - p_t)^2.
// Ground truth for what the histogram approximation estimates.
inline double oracle_r_b(const GaussianMixture& p_i, const GaussianMixture& p_t,
                         const Quadrature& quad) {
  return r_functional([&](double x) { return p_i.pdf(x) - p_t.pdf(x); }, quad);
}

// Quadrature-exact curvature functional R(p'').
inline double oracle_r_pdd(const GaussianMixture& density, const Quadrature& quad) {
  return r_functional([&](double x) { return density.second_derivative(x); }, quad);
}

// Monte-Carlo MISE: average over replicates of the quadrature of
// (estimate - truth)^2. make_estimate(replicate_seed) must return a callable
// density; deterministic under seed.
template <class Factory, class Density>
double numerical_mise(Factory&& make_estimate, Density&& truth, int n_replicates,
                      const Quadrature& quad, std::uint64_t seed) {
  if (n_replicates < 1) throw InvalidArgumentError("numerical_mise needs replicates >= 1");
  double total = 0.0;
  for (int r = 0; r < n_replicates; ++r) {
    auto estimate = make_estimate(derive_seed(seed, std::uint64_t(r)));
    total += integrate(
        [&](double x) {
          const double d = estimate(x) - truth(x);
          return d * d;
        },
        quad);
  }
  return total / double(n_replicates);
}

struct OptimalityResult {
  bool pass = false;
  double max_violation = -std::numeric_limits<double>::infinity();
};

// Checks that sum_j alpha_j^2 S_j at `alphas` does not exceed the objective at
// any of `trials` uniform random simplex points by more than `tolerance`.
// Reports the worst margin (positive = candidate beaten us by that much).
inline OptimalityResult check_weight_optimality(std::span<const double> S,
                                                std::span<const double> alphas, int trials,
                                                std::uint64_t seed, double tolerance = 1e-9) {
  const std::size_t dim = S.size();
  if (dim == 0 || alphas.size() != dim)
    throw InvalidArgumentError("check_weight_optimality: length mismatch");
  for (double s : S)
    if (!(s > 0.0)) throw InvalidArgumentError("S entries must be positive");
  if (trials < 1) throw InvalidArgumentError("trials must be >= 1");

  auto objective = [&S](std::span<const double> a) {
    double obj = 0.0;
    for (std::size_t j = 0; j < S.size(); ++j) obj += a[j] * a[j] * S[j];
    return obj;
  };

  const double ours = objective(alphas);
  Rng rng(seed);
  std::vector<double> candidate(dim);
  OptimalityResult result;
  for (int trial = 0; trial < trials; ++trial) {
    double total = 0.0;
    for (double& g : candidate) {
      g = -std::log(1.0 - rng.uniform01());  // Exp(1); normalised Dirichlet(1)
      total += g;
    }
    if (total <= 0.0) {
      std::fill(candidate.begin(), candidate.end(), 1.0 / double(dim));
      total = 1.0;
    } else {
      for (double& g : candidate) g /= total;
    }
    result.max_violation = std::max(result.max_violation, ours - objective(candidate));
  }
  result.pass = result.max_violation <= tolerance;
  return result;
}

}  // namespace takde

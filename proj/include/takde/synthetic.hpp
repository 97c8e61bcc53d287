#pragma once

#include <cmath>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "takde/batch.hpp"
#include "takde/errors.hpp"
#include "takde/kernel.hpp"
#include "takde/rng.hpp"

namespace takde {

struct GaussComponent {
  double weight = 1.0;
  double mean = 0.0;
  double stddev = 1.0;
};

// Finite Gaussian mixture with analytic density, second derivative, and
// component-then-normal sampling. Weights sit on the simplex.
struct GaussianMixture {
  std::vector<GaussComponent> components;

  double pdf(double x) const {
    double p = 0.0;
    for (const GaussComponent& c : components) {
      const double u = (x - c.mean) / c.stddev;
      p += c.weight * kInvSqrt2Pi * std::exp(-0.5 * u * u) / c.stddev;
    }
    return p;
  }

  // d^2/dx^2 of the density; per component (u^2 - 1) phi(u) / s^3.
  double second_derivative(double x) const {
    double p = 0.0;
    for (const GaussComponent& c : components) {
      const double u = (x - c.mean) / c.stddev;
      const double phi = kInvSqrt2Pi * std::exp(-0.5 * u * u);
      p += c.weight * (u * u - 1.0) * phi / (c.stddev * c.stddev * c.stddev);
    }
    return p;
  }

  double sample(Rng& rng) const {
    const double u = rng.uniform01();
    double cum = 0.0;
    for (std::size_t i = 0; i + 1 < components.size(); ++i) {
      cum += components[i].weight;
      if (u < cum) return components[i].mean + components[i].stddev * rng.normal();
    }
    const GaussComponent& last = components.back();
    return last.mean + last.stddev * rng.normal();
  }

  double min_stddev() const {
    double s = components.front().stddev;
    for (const GaussComponent& c : components) s = std::min(s, c.stddev);
    return s;
  }
};

inline const char* marron_wand_name(int id) {
  static constexpr const char* names[15] = {
      "gaussian",        "skewed_unimodal",  "strongly_skewed",
      "kurtotic_unimodal", "outlier",        "bimodal",
      "separated_bimodal", "skewed_bimodal", "trimodal",
      "claw",            "double_claw",      "asymmetric_claw",
      "asymmetric_double_claw", "smooth_comb", "discrete_comb"};
  if (id < 1 || id > 15) throw InvalidArgumentError("Marron-Wand id must be in 1..15");
  return names[id - 1];
}

// The fifteen canonical Marron-Wand (1992) normal mixtures, id 1..15.
inline GaussianMixture marron_wand(int id) {
  GaussianMixture mix;
  auto add = [&mix](double w, double mu, double s) { mix.components.push_back({w, mu, s}); };
  switch (id) {
    case 1:  // standard normal
      add(1.0, 0.0, 1.0);
      break;
    case 2:  // skewed unimodal
      add(1.0 / 5.0, 0.0, 1.0);
      add(1.0 / 5.0, 0.5, 2.0 / 3.0);
      add(3.0 / 5.0, 13.0 / 12.0, 5.0 / 9.0);
      break;
    case 3:  // strongly skewed
      for (int l = 0; l <= 7; ++l) {
        const double scale = std::pow(2.0 / 3.0, double(l));
        add(1.0 / 8.0, 3.0 * (scale - 1.0), scale);
      }
      break;
    case 4:  // kurtotic unimodal
      add(2.0 / 3.0, 0.0, 1.0);
      add(1.0 / 3.0, 0.0, 0.1);
      break;
    case 5:  // outlier
      add(1.0 / 10.0, 0.0, 1.0);
      add(9.0 / 10.0, 0.0, 0.1);
      break;
    case 6:  // bimodal
      add(0.5, -1.0, 2.0 / 3.0);
      add(0.5, 1.0, 2.0 / 3.0);
      break;
    case 7:  // separated bimodal
      add(0.5, -1.5, 0.5);
      add(0.5, 1.5, 0.5);
      break;
    case 8:  // skewed bimodal
      add(0.75, 0.0, 1.0);
      add(0.25, 1.5, 1.0 / 3.0);
      break;
    case 9:  // trimodal
      add(9.0 / 20.0, -6.0 / 5.0, 3.0 / 5.0);
      add(9.0 / 20.0, 6.0 / 5.0, 3.0 / 5.0);
      add(1.0 / 10.0, 0.0, 0.25);
      break;
    case 10:  // claw
      add(0.5, 0.0, 1.0);
      for (int l = 0; l <= 4; ++l) add(1.0 / 10.0, double(l) / 2.0 - 1.0, 0.1);
      break;
    case 11:  // double claw
      add(49.0 / 100.0, -1.0, 2.0 / 3.0);
      add(49.0 / 100.0, 1.0, 2.0 / 3.0);
      for (int l = 0; l <= 6; ++l) add(1.0 / 350.0, (double(l) - 3.0) / 2.0, 0.01);
      break;
    case 12:  // asymmetric claw
      add(0.5, 0.0, 1.0);
      for (int l = -2; l <= 2; ++l)
        add(std::pow(2.0, 1.0 - double(l)) / 31.0, double(l) + 0.5,
            std::pow(2.0, -double(l)) / 10.0);
      break;
    case 13:  // asymmetric double claw
      for (int l = 0; l <= 1; ++l) add(46.0 / 100.0, 2.0 * double(l) - 1.0, 2.0 / 3.0);
      for (int l = 1; l <= 3; ++l) add(1.0 / 300.0, -double(l) / 2.0, 0.01);
      for (int l = 1; l <= 3; ++l) add(7.0 / 300.0, double(l) / 2.0, 0.07);
      break;
    case 14:  // smooth comb
      for (int l = 0; l <= 5; ++l) {
        const double half = std::pow(0.5, double(l));
        add(std::pow(2.0, 5.0 - double(l)) / 63.0, (65.0 - 96.0 * half) / 21.0,
            (32.0 / 63.0) * half);
      }
      break;
    case 15:  // discrete comb
      for (int l = 0; l <= 2; ++l) add(2.0 / 7.0, (12.0 * double(l) - 15.0) / 7.0, 2.0 / 7.0);
      for (int l = 8; l <= 10; ++l) add(1.0 / 21.0, 2.0 * double(l) / 7.0, 1.0 / 21.0);
      break;
    default:
      throw InvalidArgumentError("Marron-Wand id must be in 1..15");
  }
  return mix;
}

// Convex combination of two mixtures: weight_a on a, (1 - weight_a) on b.
inline GaussianMixture blend_mixtures(const GaussianMixture& a, const GaussianMixture& b,
                                      double weight_a) {
  if (!(weight_a >= 0.0 && weight_a <= 1.0))
    throw InvalidArgumentError("blend weight must lie in [0, 1]");
  GaussianMixture mix;
  if (weight_a > 0.0)
    for (const GaussComponent& c : a.components)
      mix.components.push_back({weight_a * c.weight, c.mean, c.stddev});
  if (weight_a < 1.0)
    for (const GaussComponent& c : b.components)
      mix.components.push_back({(1.0 - weight_a) * c.weight, c.mean, c.stddev});
  return mix;
}

// Ground-truth schedule for one synthetic stream: a random composition of the
// batches into 14 sections. Within section j the density walks linearly from
// mixture g_j to g_{j+1}; earlier mixtures never reappear. The structural
// seed also pins the per-batch training sizes so every Monte-Carlo replicate
// of the same plan trains on the same counts.
struct StreamPlan {
  std::vector<int> section_sizes;  // 14 positive entries
  std::uint64_t structural_seed = 0;

  int total_batches() const {
    int total = 0;
    for (int s : section_sizes) total += s;
    return total;
  }

  // 0-based global batch index -> (section j in 1..14, position i in 1..|S_j|).
  std::pair<int, int> locate(int global_index) const {
    if (global_index < 0) throw InvalidArgumentError("batch index out of range");
    int offset = global_index;
    for (int j = 0; j < int(section_sizes.size()); ++j) {
      if (offset < section_sizes[std::size_t(j)]) return {j + 1, offset + 1};
      offset -= section_sizes[std::size_t(j)];
    }
    throw InvalidArgumentError("batch index out of range");
  }
};

// Random composition of total_batches into 14 positive parts via 13 distinct
// uniform cut points. Deterministic under seed.
inline StreamPlan make_plan(int total_batches, std::uint64_t seed) {
  if (total_batches < 14)
    throw InvalidArgumentError("need at least 14 batches (one per section)");
  Rng rng(derive_seed(seed, 0));
  std::set<int> cuts;
  while (cuts.size() < 13)
    cuts.insert(int(rng.uniform_int(1, std::int64_t(total_batches) - 1)));

  StreamPlan plan;
  plan.structural_seed = seed;
  plan.section_sizes.reserve(14);
  int prev = 0;
  for (int cut : cuts) {
    plan.section_sizes.push_back(cut - prev);
    prev = cut;
  }
  plan.section_sizes.push_back(total_batches - prev);
  return plan;
}

// True density of one batch: h_i^(j) = ((|S_j| - i + 1)/|S_j|) g_j
// + ((i - 1)/|S_j|) g_{j+1}.
inline GaussianMixture batch_density(const StreamPlan& plan, int global_index) {
  const auto [section, pos] = plan.locate(global_index);
  const double size_j = double(plan.section_sizes[std::size_t(section - 1)]);
  const double lead = (size_j - double(pos) + 1.0) / size_j;
  return blend_mixtures(marron_wand(section), marron_wand(section + 1), lead);
}

struct BatchSample {
  Batch train;
  std::vector<double> test;
  GaussianMixture truth;
};

// Draws the full stream: per batch a training set of structural size in
// [size_lo, size_hi] and test_size held-out points, all from the batch's true
// density. Points depend on sampling_seed only; sizes depend on the plan.
inline std::vector<BatchSample> sample_stream(const StreamPlan& plan, int size_lo, int size_hi,
                                              int test_size, std::uint64_t sampling_seed) {
  if (size_lo < 1 || size_hi < size_lo)
    throw InvalidArgumentError("batch size range must satisfy 1 <= lo <= hi");
  if (test_size < 0) throw InvalidArgumentError("test size must be non-negative");
  const int total = plan.total_batches();

  Rng size_rng(derive_seed(plan.structural_seed, 1));
  std::vector<int> sizes(static_cast<std::size_t>(total));
  for (int& n : sizes) n = int(size_rng.uniform_int(size_lo, size_hi));

  Rng rng(sampling_seed);
  std::vector<BatchSample> stream;
  stream.reserve(std::size_t(total));
  for (int g = 0; g < total; ++g) {
    BatchSample sample;
    sample.truth = batch_density(plan, g);
    sample.train.t = g;
    sample.train.points.resize(std::size_t(sizes[std::size_t(g)]));
    for (double& x : sample.train.points) x = sample.truth.sample(rng);
    sample.test.resize(std::size_t(test_size));
    for (double& x : sample.test) x = sample.truth.sample(rng);
    stream.push_back(std::move(sample));
  }
  return stream;
}

}  // namespace takde

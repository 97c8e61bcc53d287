#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace takde {

// splitmix64 finalizer; spreads low-entropy inputs over the full 64-bit range.
inline std::uint64_t mix_seed(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Independent stream seed for (base, stream) pairs; replicates and structural
// draws get disjoint streams from one user seed.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  return mix_seed(base + 0x9e3779b97f4a7c15ull * (stream + 1));
}

// Seeded generator. mt19937_64 supplies the raw bits (its output sequence is
// pinned by the standard); the value transforms are local so results do not
// depend on the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1), 53 random bits.
  double uniform01() { return double(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform integer on {lo, ..., hi}, rejection-debiased.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t range = std::uint64_t(hi - lo) + 1;
    if (range == 0) return std::int64_t(engine_());  // full 64-bit span
    const std::uint64_t limit = ~std::uint64_t(0) - ~std::uint64_t(0) % range;
    std::uint64_t draw;
    do {
      draw = engine_();
    } while (draw >= limit);
    return lo + std::int64_t(draw % range);
  }

  // Standard normal via Box-Muller; the second deviate is cached.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * uniform01();
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace takde

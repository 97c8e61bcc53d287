#pragma once

#include <cmath>
#include <utility>

#include "takde/errors.hpp"

namespace takde {

inline constexpr double kInvSqrt2Pi = 0.3989422804014326779;     // (2*pi)^(-1/2)
inline constexpr double kLogInvSqrt2Pi = -0.9189385332046727418;  // log of the above

enum class KernelKind { gaussian };

// A standard (unit-bandwidth) kernel together with the two moment constants
// the AMISE expressions need: r_of_k = R(K) = integral of K^2 and
// mu2 = integral of x^2 K(x) dx. The enumeration is closed for now, but the
// constants travel with the kind so further kernels slot in without interface
// changes.
struct KernelSpec {
  KernelKind kind = KernelKind::gaussian;
  double r_of_k = 0.28209479177387814;  // 1/(2 sqrt(pi))
  double mu2 = 1.0;

  static KernelSpec gaussian() { return {}; }
};

// K(u) at unit bandwidth. Total on the reals, non-negative.
inline double eval_kernel(const KernelSpec& spec, double u) {
  switch (spec.kind) {
    case KernelKind::gaussian:
      return kInvSqrt2Pi * std::exp(-0.5 * u * u);
  }
  throw InvalidArgumentError("unknown kernel kind");
}

// log K(u), kept analytic so likelihood code can shift exponents instead of
// taking the log of an underflowed density.
inline double log_eval_kernel(const KernelSpec& spec, double u) {
  switch (spec.kind) {
    case KernelKind::gaussian:
      return kLogInvSqrt2Pi - 0.5 * u * u;
  }
  throw InvalidArgumentError("unknown kernel kind");
}

// Scaled evaluation K_sigma(x - center) = (1/sigma) K((x - center)/sigma).
inline double eval_scaled(const KernelSpec& spec, double x, double center, double sigma) {
  if (!(sigma > 0.0)) throw InvalidBandwidthError("kernel bandwidth must be positive");
  return eval_kernel(spec, (x - center) / sigma) / sigma;
}

inline std::pair<double, double> kernel_constants(const KernelSpec& spec) {
  return {spec.r_of_k, spec.mu2};
}

}  // namespace takde

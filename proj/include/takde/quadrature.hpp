#pragma once

#include <cmath>
#include <string>

#include "takde/errors.hpp"

namespace takde {

// Composite Simpson rule on [lo, hi] with an odd number of nodes.
struct Quadrature {
  double lo = -15.0;
  double hi = 15.0;
  int n_nodes = 6001;

  static Quadrature simpson(double lo, double hi, int n_nodes) {
    if (!(hi > lo)) throw InvalidArgumentError("quadrature needs hi > lo");
    if (n_nodes < 3 || n_nodes % 2 == 0)
      throw InvalidArgumentError("composite Simpson needs an odd node count >= 3");
    return {lo, hi, n_nodes};
  }

  // Wide default covering every Marron-Wand mixture with generous margin.
  static Quadrature mixture_default() { return {-15.0, 15.0, 6001}; }
};

template <class F>
double integrate(F&& f, const Quadrature& quad) {
  const int n = quad.n_nodes;
  const double h = (quad.hi - quad.lo) / double(n - 1);
  double sum = f(quad.lo) + f(quad.hi);
  for (int i = 1; i < n - 1; ++i) {
    const double coef = (i % 2 == 1) ? 4.0 : 2.0;
    sum += coef * f(quad.lo + h * double(i));
  }
  return sum * h / 3.0;
}

// R(f) = integral of f^2. Every node evaluation is checked; a non-finite
// value aborts with the offending abscissa.
template <class F>
double r_functional(F&& f, const Quadrature& quad) {
  const int n = quad.n_nodes;
  const double h = (quad.hi - quad.lo) / double(n - 1);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = quad.lo + h * double(i);
    const double v = f(x);
    if (!std::isfinite(v))
      throw NumericError("r_functional: non-finite integrand at x = " + std::to_string(x));
    const double coef = (i == 0 || i == n - 1) ? 1.0 : ((i % 2 == 1) ? 4.0 : 2.0);
    sum += coef * v * v;
  }
  return sum * h / 3.0;
}

}  // namespace takde

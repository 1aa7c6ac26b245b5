#pragma once

#include <functional>
#include <vector>

namespace rtmix {

/// Gauss-Legendre rule on [-1, 1]; nodes ascending. Cached per order.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

const GaussRule& gauss_legendre(int order);

using ScalarFn = std::function<double(double)>;

/// Composite Gauss-Legendre with `panels` equal panels on [a, b].
double integrate_gl(const ScalarFn& f, double a, double b, int order = 64, int panels = 4);

/// Composite Gauss-Legendre over the panels delimited by `breaks` (sorted,
/// first = a, last = b).
double integrate_gl_breaks(const ScalarFn& f, const std::vector<double>& breaks, int order = 64);

struct AdaptiveResult {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
  bool converged = true;
};

/// Adaptive Gauss-Kronrod (7, 15) bisection until the estimated error is
/// below max(abs_tol, rel_tol * |value|).
AdaptiveResult integrate_adaptive(const ScalarFn& f, double a, double b, double abs_tol = 1e-13,
                                  double rel_tol = 1e-13, int max_depth = 50);

/// Halton point k (k >= 1) in [0,1)^dims, dims <= 8.
std::vector<double> halton(long k, int dims);

}  // namespace rtmix

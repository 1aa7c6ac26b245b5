#pragma once

#include <vector>

namespace rtmix {

/// Radial plateau cutoff Phi(u), u = |y|^2: Phi = 1 for u <= (1 - eps)^2,
/// Phi = 0 for u >= 1, and 1 - S(q) in between, where S is the C^7
/// smoothstep polynomial of degree 15 and q the rescaled position in the
/// transition annulus.
class PlateauCutoff {
 public:
  explicit PlateauCutoff(double eps);

  double eps() const { return eps_; }
  double operator()(double u) const;
  /// Phi^(k)(u) / k! for k = 0..order.
  std::vector<double> taylor(double u, int order) const;

  static constexpr int kSmoothness = 7;

 private:
  double eps_;
  double r0sq_;
  std::vector<double> poly_;  // smoothstep coefficients in q, ascending
};

}  // namespace rtmix

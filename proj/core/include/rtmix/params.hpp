#pragma once

#include <stdexcept>

namespace rtmix {

/// Gravity g, Atwood number A, half-height L of the domain, dimension n.
struct PhysicalParams {
  double g = 1.0;
  double A = 1.0;
  double L = 1.0;
  int n = 2;

  double gA() const { return g * A; }
  double E0() const { return g * A * L * L; }
  /// Time at which the selected growth a = gA t^2/3 reaches L.
  double T0() const;

  /// Throws std::invalid_argument unless g > 0, A in (0,1], L > 0, n >= 2.
  void validate() const;
};

}  // namespace rtmix

#pragma once

#include <stdexcept>
#include <string>

#include "rtmix/linalg.hpp"

namespace rtmix {

/// Raised when an operation leaves its mathematical domain (|rho| >= 1 where
/// the hull functions have poles, out-of-horizon times, wrong phases).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Densities with |rho| >= 1 - kPoleGuard count as boundary densities.
inline constexpr double kPoleGuard = 1e-14;

/// Relaxed state z = (rho, v, m, sigma, p) at one space-time point.
///
/// sigma is stored as a full symmetric matrix and is expected to be
/// trace-free; `sigma_plus_p()` recovers the combination sigma + p id that
/// appears in the linear system.
struct StateVector {
  double rho = 0.0;
  Vec v;
  Vec m;
  Mat sigma;
  double p = 0.0;

  StateVector() = default;
  StateVector(double rho_, Vec v_, Vec m_, Mat sigma_, double p_);

  static StateVector zero(int n);

  /// Split a symmetric matrix S into sigma = S deviator and p = tr(S)/n.
  static StateVector from_stress(double rho, Vec v, Vec m, const Mat& stress);

  int dim() const { return static_cast<int>(v.size()); }
  Mat sigma_plus_p() const;

  /// Euclidean norm over every component, sigma counted entrywise.
  double norm() const;
  /// Norm of pi(z) = (rho, v, m, sigma); the pressure is dropped.
  double pi_norm() const;

  StateVector& operator+=(const StateVector& o);
  StateVector& operator-=(const StateVector& o);
  StateVector& operator*=(double s);

  friend StateVector operator+(StateVector a, const StateVector& b) { return a += b; }
  friend StateVector operator-(StateVector a, const StateVector& b) { return a -= b; }
  friend StateVector operator*(double s, StateVector a) { return a *= s; }
  friend StateVector operator*(StateVector a, double s) { return a *= s; }
  friend StateVector operator-(StateVector a) { return a *= -1.0; }
};

/// Throws std::invalid_argument if the components have inconsistent sizes
/// or sigma is not symmetric and trace-free.
void validate(const StateVector& z);

/// e(x,t)[r] = e0 + r * e1 frozen at one point.
struct EnergyAtPoint {
  double e0 = 0.0;
  double e1 = 0.0;

  double operator()(double r) const { return e0 + r * e1; }
};

/// The affine gauge with e1 = -epsilon g A x_n.
struct EnergyForm {
  double epsilon = 0.0;
  double g = 1.0;
  double A = 1.0;

  EnergyAtPoint at(double e0, double xn) const { return {e0, -epsilon * g * A * xn}; }
};

std::string to_string(const StateVector& z);

}  // namespace rtmix

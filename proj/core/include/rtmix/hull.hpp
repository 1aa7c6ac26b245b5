#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rtmix/state.hpp"

namespace rtmix {

/// M(z) = [v(x)v - rho (m(x)v + v(x)m) + m(x)m] / (1 - rho^2) - sigma.
/// Throws DomainError when |rho| >= 1 - kPoleGuard.
Mat matrix_M(const StateVector& z);

/// v(x)v + (1 - rho^2) w(x)w - sigma with w = (m - rho v)/(1 - rho^2).
Mat matrix_M_alt(const StateVector& z);

/// T_{+-}(z) = |m +- v|^2 / (n (rho +- 1)^2); sign must be +1 or -1.
double T_pm(const StateVector& z, int sign);

/// Q(z) = lambda_max(M(z)).
double Q_of(const StateVector& z);

enum class HullClass { interior_U, closure_U0, K_plus_prime, K_minus_prime, in_K, outside };

std::string to_string(HullClass c);

struct Margin {
  std::string name;
  double slack;
};

struct HullMembership {
  HullClass cls = HullClass::outside;
  std::vector<Margin> margins;

  bool in_closure() const { return cls != HullClass::outside; }
};

struct ClassifyTolerance {
  /// Band for measure-zero sets (K, K'+-, boundary of U0).
  double band = 1e-9;
  /// Required slack for strict interior membership.
  double strict = 0.0;
};

HullMembership classify(const StateVector& z, const EnergyAtPoint& e,
                        const ClassifyTolerance& tol = {});

/// Build the K point with the given density sign and velocity direction:
/// |v|^2 = n e[rho], m = rho v, sigma = (v(x)v)deviator.
/// A(rho) = (1 - rho^2)^{-1} [[1, -rho], [-rho, 1]] and its first two
/// derivatives in closed form.
struct AFamily {
  Eigen::Matrix2d A, dA, d2A;
};
AFamily a_family(double rho);

StateVector make_K_point(int rho_sign, const Vec& direction, const EnergyAtPoint& e,
                         double p = 0.0);

}  // namespace rtmix

#pragma once

#include <string>
#include <vector>

#include "rtmix/hull.hpp"
#include "rtmix/params.hpp"
#include "rtmix/profile.hpp"

namespace rtmix {

/// Raised when a(t) exceeds L; continuation belongs to the extensions module.
class HorizonError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// The self-similar subsolution generated by (f, a, eps) with a constant
/// relaxation margin delta0. Fields depend on (x_n, t) only.
class SubsolutionField {
 public:
  SubsolutionField(Profile f, GrowthRate a, double epsilon, PhysicalParams params, double delta0);

  /// delta0 = 1e-6 g A L.
  static double default_delta0(const PhysicalParams& p) { return 1e-6 * p.gA() * p.L; }

  const Profile& profile() const { return f_; }
  const GrowthRate& growth() const { return a_; }
  double epsilon() const { return eps_; }
  const PhysicalParams& params() const { return p_; }
  double delta0() const { return delta0_; }

  /// Throws HorizonError when a(t) > L.
  double zone(double t) const;
  bool in_zone(double xn, double t) const;

  double rho(double xn, double t) const;
  double m_n(double xn, double t) const;
  /// sigma_nn; the horizontal diagonal entries are -sigma_nn / (n - 1).
  double sigma_nn(double xn, double t) const;
  double pressure(double xn, double t) const;
  /// int_{-L}^{x_n} rho.
  double rho_integral(double xn, double t) const;
  double e_tilde(double xn, double t) const;

  /// Full relaxed state at (x, t) for x in R^n (only x_n matters).
  StateVector state(double xn, double t) const;
  /// e[r] = e_tilde - eps g A x_n r.
  EnergyAtPoint energy(double xn, double t) const;

 private:
  Profile f_;
  GrowthRate a_;
  double eps_;
  PhysicalParams p_;
  double delta0_;
};

struct PointwiseViolation {
  double xn, t;
  std::string what;
  double margin;
};

struct PointwiseReport {
  long interior_nodes = 0;
  long interior_strict = 0;
  long exterior_nodes = 0;
  long exterior_in_K = 0;
  double min_interior_margin = 0.0;
  std::vector<PointwiseViolation> violations;  // first few only

  bool pass() const { return interior_strict == interior_nodes && exterior_in_K == exterior_nodes; }
};

/// Sweep an nx x nt grid of x_n in [-L, L], t in (0, t_max]; interior nodes
/// must classify interior_U, exterior nodes in_K within `k_tol`.
PointwiseReport verify_pointwise(const SubsolutionField& field, double t_max, int nx, int nt,
                                 double k_tol = 1e-9);

struct WeakResidual {
  double continuity = 0.0;  // max |dt rho + dn m_n|
  double momentum = 0.0;    // max |dn(sigma_nn + p) + gA rho|
};

struct WeakReport {
  WeakResidual coarse, fine;  // at h and h/2
  double order = 0.0;
  long nodes = 0;
};

/// Central differences on a grid kept 2h away from x_n = +-a(t).
WeakReport verify_weak_equations(const SubsolutionField& field, double t_max, double h, int nx = 41,
                                 int nt = 21);

}  // namespace rtmix

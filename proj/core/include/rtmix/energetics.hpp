#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "rtmix/params.hpp"
#include "rtmix/profile.hpp"

namespace rtmix {

struct GPair {
  double plus;
  double minus;
};

/// G^+- at y in [0, 1]; G^- at y = 1 uses the limit of F / (1 - f).
GPair G_pm(const Profile& f, const GrowthRate& a, double epsilon, double y, double t, const PhysicalParams& p);

/// E(t) - E(0), computed directly so that small deficits keep full relative
/// precision. Throws HorizonError when a(t) > L.
double energy_deficit(const Profile& f, const GrowthRate& a, double epsilon, double t, const PhysicalParams& p);

double total_energy(const Profile& f, const GrowthRate& a, double epsilon, double t, const PhysicalParams& p);

/// int_{-L}^{L} (n/2) e_tilde + (1 - n eps/2) gA x_n rho dx with delta0 = 0,
/// by adaptive quadrature of the field itself. Independent of the G-form.
double total_energy_from_field(const Profile& f, const GrowthRate& a, double epsilon, double t,
                               const PhysicalParams& p);

/// E(0) - int gA x_n rho dx = gA a^2 (1 - 2 int_0^1 y f).
double released_energy(const Profile& f, const GrowthRate& a, double t, const PhysicalParams& p);

/// (E(0) - E(t)) / released energy; DomainError when nothing is released.
double dissipation_ratio(const Profile& f, const GrowthRate& a, double epsilon, double t,
                         const PhysicalParams& p);

struct IPair {
  double I1;
  double I2;
};

IPair I1_I2(const Profile& f);
/// I2 through -1/2 int_0^1 F.
double I2_via_F(const Profile& f);

struct JkOptions {
  int depth = 6;
  double t0 = 0.0;  // 0 selects 1e-2 sqrt(L / gA)
  double rel_tol = 1e-4;
};

struct JkResult {
  double value = 0.0;
  bool converged = true;
  std::vector<double> samples;  // deficit(t_j) / t_j^k
};

/// lim_{t -> 0+} (E(t) - E(0)) / t^k by Richardson extrapolation over
/// t_j = t0 2^-j.
JkResult J_k(const Profile& f, const GrowthRate& a, double epsilon, int k, const PhysicalParams& p,
             const JkOptions& opt = {});

/// c^3 I1 / 2 - c^2 gA I2 / 2.
double J_tilde(const Profile& f, double c, double gA);
double J_tilde(const IPair& I, double c, double gA);

using Fn = std::function<double(double)>;

/// L2(0,1) inner product by composite Gauss-Legendre; `breaks` adds panel
/// boundaries for kinks.
double l2_inner(const Fn& u, const Fn& w, const std::vector<double>& breaks = {});

/// S(f) = |f|^2 - 1/3 on (0, 1).
double S_of(const Fn& f, const std::vector<double>& breaks = {});
/// |f - id|^2 - 3/4 <f - id, f + id>^2 on (0, 1).
double J_hat(const Fn& f, const std::vector<double>& breaks = {});
double J_hat(const Profile& f);
/// Pointwise gradient (2 - 3 S(f)) f - 2 id.
Fn grad_J_hat(const Fn& f, const std::vector<double>& breaks = {});

struct EnergyTrace {
  std::vector<std::pair<double, double>> samples;  // (t, E)
  double E0 = 0.0;
  std::string phase;
};

struct AdmissibilityVerdict {
  bool admissible = true;       // E(t) <= E0 (1 + 1e-12)
  bool monotone = true;         // non-increasing
  bool strictly_decreasing = true;
  long first_violation = -1;
  double worst_excess = 0.0;
};

AdmissibilityVerdict admissibility(const EnergyTrace& trace, double rel_tol = 1e-12);

}  // namespace rtmix

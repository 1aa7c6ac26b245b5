#include "rtmix/subsolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rtmix {

SubsolutionField::SubsolutionField(Profile f, GrowthRate a, double epsilon, PhysicalParams params, double delta0)
    : f_(std::move(f)), a_(std::move(a)), eps_(epsilon), p_(params), delta0_(delta0) {
  p_.validate();
  if (!(eps_ >= 0.0 && eps_ <= 2.0 / p_.n + 1e-15)) throw std::invalid_argument("epsilon must lie in [0, 2/n]");
  if (!(delta0_ >= 0.0)) throw std::invalid_argument("delta0 must be >= 0");
}

double SubsolutionField::zone(double t) const {
  const double a = a_.a(t);
  if (a > p_.L * (1.0 + 1e-12)) {
    throw HorizonError("a(t) > L: the mixing zone has reached the boundary; use the extensions module");
  }
  return a;
}

bool SubsolutionField::in_zone(double xn, double t) const { return std::abs(xn) < zone(t); }

double SubsolutionField::rho(double xn, double t) const {
  const double a = zone(t);
  if (std::abs(xn) < a) return f_.f(xn / a);
  return xn >= 0.0 ? 1.0 : -1.0;
}

double SubsolutionField::m_n(double xn, double t) const {
  const double a = zone(t);
  if (std::abs(xn) < a) return a_.adot(t) * f_.F(xn / a);
  return 0.0;
}

double SubsolutionField::sigma_nn(double xn, double t) const {
  const double a = zone(t);
  if (!(std::abs(xn) < a)) return 0.0;
  const double ad = a_.adot(t);
  return ad * ad * f_.F2_over_1mf2(xn / a) * (1.0 - 1.0 / p_.n);
}

double SubsolutionField::rho_integral(double xn, double t) const {
  const double a = zone(t);
  if (xn <= -a) return -(xn + p_.L);
  if (xn >= a) return xn - p_.L;
  return -(p_.L - a) + a * f_.integral(xn / a);
}

double SubsolutionField::pressure(double xn, double t) const {
  return -sigma_nn(xn, t) - p_.gA() * rho_integral(xn, t);
}

double SubsolutionField::e_tilde(double xn, double t) const {
  const double a = zone(t);
  const double egx = eps_ * p_.gA() * xn;
  if (!(std::abs(xn) < a)) return std::abs(egx);
  const double y = xn / a;
  const double ad = a_.adot(t);
  const double rp = ad * f_.ratio_plus(y), rm = ad * f_.ratio_minus(y);
  const double r = f_.f(y);
  return std::max(rp * rp / p_.n + egx, rm * rm / p_.n - egx) + (1.0 - r * r) * delta0_;
}

StateVector SubsolutionField::state(double xn, double t) const {
  const int n = p_.n;
  StateVector z = StateVector::zero(n);
  z.rho = rho(xn, t);
  z.m[n - 1] = m_n(xn, t);
  const double snn = sigma_nn(xn, t);
  for (int i = 0; i < n - 1; ++i) z.sigma(i, i) = -snn / (n - 1);
  z.sigma(n - 1, n - 1) = snn;
  z.p = pressure(xn, t);
  return z;
}

EnergyAtPoint SubsolutionField::energy(double xn, double t) const {
  return {e_tilde(xn, t), -eps_ * p_.gA() * xn};
}

PointwiseReport verify_pointwise(const SubsolutionField& field, double t_max, int nx, int nt, double k_tol) {
  if (nx < 2 || nt < 1) throw std::invalid_argument("grid needs nx >= 2, nt >= 1");
  const double L = field.params().L;
  PointwiseReport rep;
  rep.min_interior_margin = std::numeric_limits<double>::infinity();
  const ClassifyTolerance interior{k_tol, 0.0};
  for (int j = 0; j < nt; ++j) {
    const double t = t_max * (j + 1.0) / nt;
    for (int i = 0; i < nx; ++i) {
      const double xn = -L + 2.0 * L * i / (nx - 1);
      const StateVector z = field.state(xn, t);
      const HullMembership hm = classify(z, field.energy(xn, t), interior);
      if (field.in_zone(xn, t)) {
        ++rep.interior_nodes;
        if (hm.cls == HullClass::interior_U) {
          ++rep.interior_strict;
          for (const auto& mg : hm.margins) rep.min_interior_margin = std::min(rep.min_interior_margin, mg.slack);
        } else if (rep.violations.size() < 16) {
          double worst = 0.0;
          for (const auto& mg : hm.margins) worst = std::min(worst, mg.slack);
          rep.violations.push_back({xn, t, "interior node classified " + to_string(hm.cls), worst});
        }
      } else {
        ++rep.exterior_nodes;
        if (hm.cls == HullClass::in_K) {
          ++rep.exterior_in_K;
        } else if (rep.violations.size() < 16) {
          rep.violations.push_back({xn, t, "exterior node classified " + to_string(hm.cls), 0.0});
        }
      }
    }
  }
  return rep;
}

namespace {

WeakResidual weak_residual(const SubsolutionField& f, double t_max, double h, double guard_h, int nx, int nt,
                           long* nodes) {
  const double L = f.params().L, gA = f.params().gA();
  WeakResidual r;
  long count = 0;
  for (int j = 0; j < nt; ++j) {
    const double t = t_max * (0.2 + 0.75 * j / std::max(1, nt - 1));
    const double a = f.zone(t);
    const double guard = 2.0 * guard_h * (1.0 + std::abs(f.growth().adot(t)));
    for (int i = 0; i < nx; ++i) {
      const double xn = -L + 2.0 * L * (i + 0.5) / nx;
      if (std::abs(std::abs(xn) - a) < guard) continue;
      if (std::abs(xn) + guard_h > L) continue;
      ++count;
      const double cont = (f.rho(xn, t + h) - f.rho(xn, t - h)) / (2 * h) +
                          (f.m_n(xn + h, t) - f.m_n(xn - h, t)) / (2 * h);
      auto stress = [&](double x) { return f.sigma_nn(x, t) + f.pressure(x, t); };
      const double mom = (stress(xn + h) - stress(xn - h)) / (2 * h) + gA * f.rho(xn, t);
      r.continuity = std::max(r.continuity, std::abs(cont));
      r.momentum = std::max(r.momentum, std::abs(mom));
    }
  }
  if (nodes) *nodes = count;
  return r;
}

}  // namespace

WeakReport verify_weak_equations(const SubsolutionField& field, double t_max, double h, int nx, int nt) {
  if (!(h > 0.0)) throw std::invalid_argument("grid_h must be positive");
  WeakReport rep;
  // Node selection uses the coarse guard for both passes so the grids match.
  rep.coarse = weak_residual(field, t_max, h, h, nx, nt, &rep.nodes);
  rep.fine = weak_residual(field, t_max, 0.5 * h, h, nx, nt, nullptr);
  const double a = std::max(rep.coarse.continuity, rep.coarse.momentum);
  const double b = std::max(rep.fine.continuity, rep.fine.momentum);
  rep.order = (a > 0.0 && b > 0.0) ? std::log2(a / b) : 0.0;
  return rep;
}

}  // namespace rtmix

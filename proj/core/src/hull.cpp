#include "rtmix/hull.hpp"

#include <cmath>

namespace rtmix {

namespace {

void require_Z0(double rho) {
  if (!(std::abs(rho) < 1.0 - kPoleGuard)) {
    throw DomainError("|rho| >= 1: state outside Z0");
  }
}

}  // namespace

Mat matrix_M(const StateVector& z) {
  require_Z0(z.rho);
  const double d = 1.0 - z.rho * z.rho;
  Mat num = outer(z.v, z.v) - z.rho * sym_outer(z.m, z.v) + outer(z.m, z.m);
  Mat out = num / d - z.sigma;
  return 0.5 * (out + out.transpose());
}

Mat matrix_M_alt(const StateVector& z) {
  require_Z0(z.rho);
  const double d = 1.0 - z.rho * z.rho;
  const Vec w = (z.m - z.rho * z.v) / d;
  return outer(z.v, z.v) + d * outer(w, w) - z.sigma;
}

double T_pm(const StateVector& z, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
  const double s = static_cast<double>(sign);
  const double den = z.rho + s;
  if (std::abs(den) < kPoleGuard) throw DomainError("T_pm evaluated at its pole rho = -sign");
  return (z.m + s * z.v).squaredNorm() / (static_cast<double>(z.dim()) * den * den);
}

double Q_of(const StateVector& z) { return lambda_max(matrix_M(z)); }

std::string to_string(HullClass c) {
  switch (c) {
    case HullClass::interior_U: return "interior_U";
    case HullClass::closure_U0: return "closure_U0";
    case HullClass::K_plus_prime: return "K_plus_prime";
    case HullClass::K_minus_prime: return "K_minus_prime";
    case HullClass::in_K: return "in_K";
    case HullClass::outside: return "outside";
  }
  return "outside";
}

HullMembership classify(const StateVector& z, const EnergyAtPoint& e, const ClassifyTolerance& tol) {
  if (tol.band < 0.0 || tol.strict < 0.0) throw std::invalid_argument("tolerances must be >= 0");
  const int n = z.dim();
  HullMembership out;

  const bool in_Z0 = std::abs(z.rho) < 1.0 - kPoleGuard;
  std::vector<Margin> u_margins;
  if (in_Z0) {
    u_margins = {{"T_plus", e(1.0) - T_pm(z, 1)},
                 {"T_minus", e(-1.0) - T_pm(z, -1)},
                 {"Q", e(z.rho) - Q_of(z)}};
    bool strict = true;
    for (const auto& mg : u_margins) strict = strict && mg.slack > tol.strict;
    if (strict) {
      out.cls = HullClass::interior_U;
      out.margins = std::move(u_margins);
      return out;
    }
  }

  for (int sign : {1, -1}) {
    const double s = static_cast<double>(sign);
    const double rho_gap = std::abs(z.rho - s);
    if (rho_gap > tol.band) continue;
    const Mat A = outer(z.v, z.v) - z.sigma;
    const double scale = std::max(1.0, std::abs(e(s)));
    const double k_mom = (z.m - s * z.v).norm();
    const double k_res = (A - e(s) * Mat::Identity(n, n)).norm();
    if (k_mom <= tol.band * scale && k_res <= tol.band * scale) {
      out.cls = HullClass::in_K;
      out.margins = {{"rho_gap", tol.band - rho_gap},
                     {"m_minus_rho_v", tol.band * scale - k_mom},
                     {"K_residual", tol.band * scale - k_res}};
      return out;
    }
    const double lam = lambda_max(A);
    if (k_mom <= tol.band * scale && lam <= e(s) + tol.band * scale) {
      out.cls = sign > 0 ? HullClass::K_plus_prime : HullClass::K_minus_prime;
      out.margins = {{"rho_gap", tol.band - rho_gap},
                     {"m_minus_rho_v", tol.band * scale - k_mom},
                     {"lambda_max", e(s) - lam}};
      return out;
    }
  }

  if (in_Z0) {
    bool closed = true;
    for (const auto& mg : u_margins) closed = closed && mg.slack >= -tol.band;
    out.cls = closed ? HullClass::closure_U0 : HullClass::outside;
    out.margins = std::move(u_margins);
    return out;
  }
  out.cls = HullClass::outside;
  out.margins = {{"rho_gap", 1.0 - std::abs(z.rho)}};
  return out;
}

StateVector make_K_point(int rho_sign, const Vec& direction, const EnergyAtPoint& e, double p) {
  if (rho_sign != 1 && rho_sign != -1) throw std::invalid_argument("rho_sign must be +1 or -1");
  const double rho = static_cast<double>(rho_sign);
  const double level = e(rho);
  if (level < 0.0) throw DomainError("e[rho] < 0: K is empty at this point");
  const double nrm = direction.norm();
  if (nrm == 0.0) throw std::invalid_argument("direction must be nonzero");
  const int n = static_cast<int>(direction.size());
  const Vec v = direction / nrm * std::sqrt(n * level);
  return {rho, v, rho * v, trace_free_part(outer(v, v)), p};
}

AFamily a_family(double rho) {
  if (!(std::abs(rho) < 1.0 - kPoleGuard)) throw DomainError("A(rho) requires |rho| < 1");
  const double d = 1.0 - rho * rho;
  const double a = 1.0 / d, b = -rho / d;
  const double da = 2.0 * rho / (d * d), db = -(1.0 + rho * rho) / (d * d);
  const double d2a = 2.0 / (d * d) + 8.0 * rho * rho / (d * d * d);
  const double d2b = -(6.0 * rho + 2.0 * rho * rho * rho) / (d * d * d);
  AFamily out;
  out.A << a, b, b, a;
  out.dA << da, db, db, da;
  out.d2A << d2a, d2b, d2b, d2a;
  return out;
}

}  // namespace rtmix

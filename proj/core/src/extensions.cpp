#include "rtmix/extensions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rtmix/quadrature.hpp"
#include "rtmix/subsolution.hpp"

namespace rtmix {

std::string to_string(Phase p) {
  switch (p) {
    case Phase::growth: return "growth";
    case Phase::rotation: return "rotation";
    case Phase::shrink: return "shrink";
    case Phase::mixing: return "mixing";
  }
  return "?";
}

namespace {

constexpr double kTimeSlack = 1e-12;

struct PointFields {
  double rho, m;
  double m_over_1p, m_over_1m;  // m / (1 + rho), m / (1 - rho)
  double rho_int;               // int_{-L}^{x_n} rho
  bool in_zone;
};

PhaseState assemble(const PointFields& pf, double eps, double xn, const PhysicalParams& p, double delta0) {
  const int n = p.n;
  const double gA = p.gA();
  PhaseState out;
  out.in_zone = pf.in_zone;
  StateVector z = StateVector::zero(n);
  z.rho = pf.rho;
  z.m[n - 1] = pf.m;
  double e_tilde;
  if (pf.in_zone) {
    const double s = pf.m_over_1p * pf.m_over_1m;  // m^2 / (1 - rho^2)
    for (int i = 0; i < n - 1; ++i) z.sigma(i, i) = -s / n;
    z.sigma(n - 1, n - 1) = s * (1.0 - 1.0 / n);
    e_tilde = std::max(pf.m_over_1p * pf.m_over_1p / n + eps * gA * xn,
                       pf.m_over_1m * pf.m_over_1m / n - eps * gA * xn) +
              (1.0 - pf.rho * pf.rho) * delta0;
  } else {
    e_tilde = -pf.rho * eps * gA * xn;
  }
  z.p = -z.sigma(n - 1, n - 1) - gA * pf.rho_int;
  out.z = z;
  out.e = {e_tilde, -eps * gA * xn};
  return out;
}

void check_x(double xn, const PhysicalParams& p) {
  if (!(std::abs(xn) <= p.L * (1.0 + 1e-14))) throw std::invalid_argument("x_n outside [-L, L]");
}

}  // namespace

double mixing_epsilon(double t, const PhysicalParams& p) { return 2.0 / (3.0 * p.n) * p.T0() / t; }

bool mixing_first_branch(double t, const PhysicalParams& p) {
  const double q = 3.0 * p.L / (p.gA() * t * t);
  return 0.5 * p.n * mixing_epsilon(t, p) >= std::pow(q, 4) / 3.0;
}

PhaseState mixing_state(double xn, double t, const PhysicalParams& p, double delta0) {
  p.validate();
  const double T0 = p.T0();
  if (t < T0 * (1.0 - kTimeSlack)) throw PhaseError("mixing continuation starts at T0");
  check_x(xn, p);
  const double gA = p.gA(), L = p.L, b = gA * t * t;
  PointFields pf;
  pf.rho = 3.0 * xn / b;
  pf.m = 3.0 / (gA * t * t * t) * (xn * xn - L * L);
  auto ratio = [&](double sgn) {
    const double den = b + sgn * 3.0 * xn;
    if (std::abs(den) > 1e-12 * b) return 3.0 * (xn * xn - L * L) / (t * den);
    // Only at t = T0, x_n = -sgn L, where gA t^2 = 3L and the factor cancels.
    return sgn > 0 ? (xn - L) / t : -(xn + L) / t;
  };
  pf.m_over_1p = ratio(1.0);
  pf.m_over_1m = ratio(-1.0);
  pf.rho_int = 1.5 / b * (xn * xn - L * L);
  pf.in_zone = std::abs(xn) < std::min(L, b / 3.0);
  return assemble(pf, mixing_epsilon(t, p), xn, p, delta0);
}

double mixing_energy(double t, const PhysicalParams& p) {
  p.validate();
  const double T0 = p.T0();
  if (t < T0 * (1.0 - kTimeSlack)) throw PhaseError("mixing continuation starts at T0");
  const double gA = p.gA(), L = p.L, b = gA * t * t / 3.0;
  const auto integrand = [&](double y) {
    const double q = (y * y - L * L) / (b + y);
    return q * q;
  };
  const double I = integrate_adaptive(integrand, 0.0, L, 1e-15 * std::pow(L, 3), 1e-14).value;
  const double s = T0 / t;
  return (I + 2.0 * L * L * L * (1.0 - s / 3.0)) / (t * t) + gA * L * L / 3.0 * s;
}

double I_rot(double r, double L) {
  if (!(L > 0.0)) throw std::invalid_argument("L must be positive");
  if (r < -1.0 / L * (1.0 + 1e-14)) throw std::domain_error("I(r) requires r >= -1/L");
  if (r <= -1.0 / L) {
    // (y^2 - L^2)^2 / (1 - y/L)^2 = L^2 (L + y)^2.
    return L * L * (std::pow(2.0 * L, 3) - std::pow(L, 3)) / 3.0;
  }
  const auto integrand = [&](double y) {
    const double q = (L - y) * (L + y) / (1.0 + r * y);
    return q * q;
  };
  return integrate_adaptive(integrand, 0.0, L, 1e-15 * std::pow(L, 5), 1e-14).value;
}

double rotation_rate(double r, const PhysicalParams& p) {
  const double rr = std::max(r, -1.0 / p.L);
  return -2.0 * std::sqrt(p.gA() * p.L * p.L / (9.0 * I_rot(rr, p.L)));
}

double RotationSolution::r_at(double t, const PhysicalParams& p) const {
  if (t < T0 * (1.0 - kTimeSlack) || t > T_tilde * (1.0 + kTimeSlack)) {
    throw PhaseError("time outside the rotation phase");
  }
  if (t >= T_tilde) return -1.0 / p.L;
  if (t <= T0) return 1.0 / p.L;
  const OdeRhs f = [&p](double, const OdeState& y) {
    OdeState d(1);
    d[0] = rotation_rate(y[0], p);
    return d;
  };
  return std::max(ode.at(t, f)[0], -1.0 / p.L);
}

RotationSolution solve_rotation(const PhysicalParams& p, double ode_tol) {
  p.validate();
  const double L = p.L;
  const OdeRhs f = [&p](double, const OdeState& y) {
    OdeState d(1);
    d[0] = rotation_rate(y[0], p);
    return d;
  };
  const OdeEvent ev = [L](double, const OdeState& y) { return y[0] + 1.0 / L; };
  RotationSolution out;
  out.T0 = p.T0();
  OdeOptions opt;
  opt.abs_tol = ode_tol / L;
  opt.rel_tol = ode_tol;
  OdeState y0(1);
  y0[0] = 1.0 / L;
  out.ode = solve_dopri(f, out.T0, y0, 10.0 * out.T0, opt, ev);
  if (!out.ode.event_time) throw std::runtime_error("rotation did not reach r = -1/L before 10 T0");
  out.T_tilde = *out.ode.event_time;
  out.ode.y.back()[0] = -1.0 / L;
  return out;
}

double rotation_energy(double r, const PhysicalParams& p) {
  const double L = p.L;
  if (std::abs(r) > (1.0 + 1e-12) / L) throw std::domain_error("r outside [-1/L, 1/L]");
  return 4.0 / 9.0 * p.gA() * L * L * (1.0 + L * r);
}

double rotation_energy_quadrature(double r, const PhysicalParams& p) {
  const double L = p.L, gA = p.gA();
  if (std::abs(r) > (1.0 + 1e-12) / L) throw std::domain_error("r outside [-1/L, 1/L]");
  const double rd = rotation_rate(r, p);
  return rd * rd / 4.0 * I_rot(r, L) + 4.0 / 9.0 * gA * L * L * L * r + gA * L * L / 3.0;
}

double T_end_of(double T_tilde, const PhysicalParams& p) { return T_tilde + std::sqrt(21.0 * p.L / p.gA()); }

double shrink_a(double t, double T_end, const PhysicalParams& p) {
  const double d = t - T_end;
  return p.gA() * d * d / 21.0;
}

double shrink_adot(double t, double T_end, const PhysicalParams& p) { return 2.0 * p.gA() * (t - T_end) / 21.0; }

double shrink_energy(double t, double T_tilde, const PhysicalParams& p) {
  const double T_end = T_end_of(T_tilde, p);
  if (t < T_tilde * (1.0 - kTimeSlack) || t > T_end * (1.0 + kTimeSlack)) {
    throw PhaseError("time outside the shrink phase");
  }
  const double tc = std::clamp(t, T_tilde, T_end);
  const double a = shrink_a(tc, T_end, p), ad = shrink_adot(tc, T_end, p);
  const double gA = p.gA(), L = p.L;
  return 7.0 / 12.0 * a * ad * ad + 8.0 / 9.0 * gA * a * a - gA * L * L;
}

double growth_energy(double t, const PhysicalParams& p) {
  const double gA = p.gA();
  if (t < 0.0 || t > p.T0() * (1.0 + kTimeSlack)) throw PhaseError("time outside the growth phase");
  return gA * p.L * p.L - gA * gA * gA * std::pow(t, 4) / 81.0;
}

PhaseState demixing_state(double xn, double t, const PhysicalParams& p, const RotationSolution& rot, Phase phase,
                          double delta0) {
  p.validate();
  check_x(xn, p);
  const double L = p.L, eps = 2.0 / (3.0 * p.n);
  switch (phase) {
    case Phase::growth: {
      if (t <= 0.0 || t > rot.T0 * (1.0 + kTimeSlack)) throw PhaseError("time outside the growth phase");
      const SubsolutionField field(Profile::identity(), GrowthRate::quadratic(p.gA() / 3.0), eps, p, delta0);
      const double tc = std::min(t, rot.T0);
      PhaseState out;
      out.z = field.state(xn, tc);
      out.e = field.energy(xn, tc);
      out.in_zone = field.in_zone(xn, tc);
      return out;
    }
    case Phase::rotation: {
      const double r = rot.r_at(t, p), rd = rotation_rate(r, p);
      PointFields pf;
      pf.rho = r * xn;
      pf.m = -0.5 * rd * (xn * xn - L * L);
      auto ratio = [&](double sgn) {
        const double den = 1.0 + sgn * r * xn;
        if (std::abs(den) > 1e-14) return -0.5 * rd * (xn * xn - L * L) / den;
        return rd * L * L;  // limit at r x_n = -sgn
      };
      pf.m_over_1p = ratio(1.0);
      pf.m_over_1m = ratio(-1.0);
      pf.rho_int = 0.5 * r * (xn * xn - L * L);
      pf.in_zone = std::abs(xn) < L;
      return assemble(pf, eps, xn, p, delta0);
    }
    case Phase::shrink: {
      const double T_end = T_end_of(rot.T_tilde, p);
      if (t < rot.T_tilde * (1.0 - kTimeSlack) || t > T_end * (1.0 + kTimeSlack)) {
        throw PhaseError("time outside the shrink phase");
      }
      const double a = shrink_a(t, T_end, p), ad = shrink_adot(t, T_end, p);
      PointFields pf;
      pf.in_zone = std::abs(xn) < a;
      if (pf.in_zone) {
        const double y = xn / a;
        pf.rho = -y;
        pf.m = 0.5 * ad * (1.0 - y * y);
        pf.m_over_1p = 0.5 * ad * (1.0 + y);
        pf.m_over_1m = 0.5 * ad * (1.0 - y);
        pf.rho_int = (L - a) - (xn * xn - a * a) / (2.0 * a);
      } else {
        pf.rho = xn > 0.0 ? -1.0 : 1.0;
        pf.m = pf.m_over_1p = pf.m_over_1m = 0.0;
        pf.rho_int = xn > 0.0 ? L - xn : xn + L;
      }
      return assemble(pf, eps, xn, p, delta0);
    }
    case Phase::mixing: return mixing_state(xn, t, p, delta0);
  }
  throw PhaseError("unknown phase");
}

namespace {

std::vector<double> sample_times(double t0, double t1, double dt, std::vector<double> forced) {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  std::vector<double> ts;
  const long count = static_cast<long>(std::floor((t1 - t0) / dt + 1e-9));
  for (long k = 0; k <= count; ++k) ts.push_back(t0 + k * dt);
  ts.push_back(t1);
  ts.insert(ts.end(), forced.begin(), forced.end());
  std::sort(ts.begin(), ts.end());
  std::vector<double> out;
  for (double t : ts) {
    if (t < t0 || t > t1) continue;
    if (!out.empty() && std::abs(t - out.back()) <= 1e-12 * std::max(1.0, std::abs(t))) {
      // Keep the forced value exactly.
      for (double f : forced) {
        if (f == t) out.back() = t;
      }
      continue;
    }
    out.push_back(t);
  }
  return out;
}

TrajectorySample growth_sample(double t, const PhysicalParams& p) {
  return {t, Phase::growth, p.gA() * t * t / 3.0, growth_energy(t, p)};
}

ExtensionTrajectory demixing_on(const PhysicalParams& p, const std::vector<double>& ts, const RotationSolution& rot) {
  ExtensionTrajectory tr;
  tr.params = p;
  const double T0 = rot.T0, Tt = rot.T_tilde, Te = T_end_of(Tt, p);
  tr.schedule = {{0.0, T0, Phase::growth}, {T0, Tt, Phase::rotation}, {Tt, Te, Phase::shrink}};
  for (double t : ts) {
    if (t <= T0) {
      tr.samples.push_back(growth_sample(t, p));
    } else if (t <= Tt) {
      const double r = rot.r_at(t, p);
      tr.samples.push_back({t, Phase::rotation, r, rotation_energy(r, p)});
    } else {
      tr.samples.push_back({t, Phase::shrink, shrink_a(t, Te, p), shrink_energy(t, Tt, p)});
    }
  }
  return tr;
}

}  // namespace

ExtensionTrajectory mixing_trajectory(const PhysicalParams& p, double t_max, double dt) {
  p.validate();
  const double T0 = p.T0();
  if (!(t_max > 0.0)) throw std::invalid_argument("t_max must be positive");
  ExtensionTrajectory tr;
  tr.params = p;
  tr.schedule.push_back({0.0, std::min(T0, t_max), Phase::growth});
  if (t_max > T0) tr.schedule.push_back({T0, t_max, Phase::mixing});
  for (double t : sample_times(0.0, t_max, dt, {T0})) {
    if (t <= T0) {
      tr.samples.push_back(growth_sample(t, p));
    } else {
      tr.samples.push_back({t, Phase::mixing, p.gA() * t * t / 3.0, mixing_energy(t, p)});
    }
  }
  return tr;
}

ExtensionTrajectory demixing_trajectory(const PhysicalParams& p, double dt, const RotationSolution& rot) {
  p.validate();
  const double Te = T_end_of(rot.T_tilde, p);
  return demixing_on(p, sample_times(0.0, Te, dt, {rot.T0, rot.T_tilde, Te}), rot);
}

ExtensionTrajectory demixing_trajectory_n(const PhysicalParams& p, int count, const RotationSolution& rot) {
  p.validate();
  if (count < 4) throw std::invalid_argument("need at least 4 samples");
  const double Te = T_end_of(rot.T_tilde, p);
  std::vector<double> ts;
  for (int k = 0; k < count - 2; ++k) ts.push_back(Te * k / (count - 3));
  ts.back() = Te;
  ts.push_back(rot.T0);
  ts.push_back(rot.T_tilde);
  std::sort(ts.begin(), ts.end());
  return demixing_on(p, ts, rot);
}

}  // namespace rtmix

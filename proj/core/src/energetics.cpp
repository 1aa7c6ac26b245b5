#include "rtmix/energetics.hpp"

#include <algorithm>
#include <cmath>

#include "rtmix/quadrature.hpp"
#include "rtmix/subsolution.hpp"

namespace rtmix {

namespace {

constexpr int kOrder = 64;
constexpr int kPanels = 4;
constexpr int kScan = 256;

// Integral over [0,1] of max(gp, gm), with panels split at sign changes of
// gp - gm so the integrand is smooth on every panel.
double integral_of_max(const Fn& gp, const Fn& gm) {
  std::vector<double> ys(kScan + 1), d(kScan + 1);
  double scale = 0.0;
  for (int i = 0; i <= kScan; ++i) {
    ys[i] = static_cast<double>(i) / kScan;
    const double p = gp(ys[i]), m = gm(ys[i]);
    d[i] = p - m;
    scale = std::max({scale, std::abs(p), std::abs(m)});
  }
  const double noise = 1e-12 * scale;
  std::vector<double> breaks{0.0};
  for (int i = 0; i < kScan; ++i) {
    if (std::abs(d[i]) <= noise || std::abs(d[i + 1]) <= noise) continue;
    if ((d[i] > 0) == (d[i + 1] > 0)) continue;
    double lo = ys[i], hi = ys[i + 1];
    const bool lo_pos = d[i] > 0;
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (lo + hi);
      ((gp(mid) - gm(mid) > 0) == lo_pos ? lo : hi) = mid;
    }
    breaks.push_back(0.5 * (lo + hi));
  }
  breaks.push_back(1.0);
  const auto mx = [&](double y) { return std::max(gp(y), gm(y)); };
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) total += integrate_gl(mx, breaks[k], breaks[k + 1], kOrder, kPanels);
  return total;
}

double check_horizon(const GrowthRate& a, double t, const PhysicalParams& p) {
  const double at = a.a(t);
  if (at > p.L * (1.0 + 1e-12)) throw HorizonError("a(t) > L: outside the self-similar horizon");
  return at;
}

}  // namespace

GPair G_pm(const Profile& f, const GrowthRate& a, double epsilon, double y, double t, const PhysicalParams& p) {
  const double at = a.a(t), ad = a.adot(t);
  const double rp = f.ratio_plus(y), rm = f.ratio_minus(y);
  const double lin = 0.5 * p.n * epsilon * p.gA() * at * at * y;
  return {0.5 * at * ad * ad * rp * rp + lin, 0.5 * at * ad * ad * rm * rm - lin};
}

double energy_deficit(const Profile& f, const GrowthRate& a, double epsilon, double t, const PhysicalParams& p) {
  const double at = check_horizon(a, t, p);
  if (at == 0.0) return 0.0;
  const double max_part = integral_of_max([&](double y) { return G_pm(f, a, epsilon, y, t, p).plus; },
                                          [&](double y) { return G_pm(f, a, epsilon, y, t, p).minus; });
  // int_0^1 (2 - n eps) y f - 2 y = (2 - n eps) moment - 1
  const double lin = at * at * p.gA() * ((2.0 - p.n * epsilon) * f.moment() - 1.0);
  return 2.0 * max_part + lin;
}

double total_energy(const Profile& f, const GrowthRate& a, double epsilon, double t, const PhysicalParams& p) {
  return p.E0() + energy_deficit(f, a, epsilon, t, p);
}

double total_energy_from_field(const Profile& f, const GrowthRate& a, double epsilon, double t,
                               const PhysicalParams& p) {
  const SubsolutionField field(f, a, epsilon, p, 0.0);
  const double at = field.zone(t);
  const auto density = [&](double x) {
    return 0.5 * p.n * field.e_tilde(x, t) + (1.0 - 0.5 * p.n * epsilon) * p.gA() * x * field.rho(x, t);
  };
  double sum = 0.0;
  for (auto [lo, hi] : {std::pair{-p.L, -at}, std::pair{-at, 0.0}, std::pair{0.0, at}, std::pair{at, p.L}}) {
    if (hi > lo) sum += integrate_adaptive(density, lo, hi, 1e-15, 1e-14).value;
  }
  return sum;
}

double released_energy(const Profile& f, const GrowthRate& a, double t, const PhysicalParams& p) {
  const double at = check_horizon(a, t, p);
  return p.gA() * at * at * (1.0 - 2.0 * f.moment());
}

double dissipation_ratio(const Profile& f, const GrowthRate& a, double epsilon, double t,
                         const PhysicalParams& p) {
  const double rel = released_energy(f, a, t, p);
  if (rel == 0.0) throw DomainError("no released potential energy: ratio undefined");
  return -energy_deficit(f, a, epsilon, t, p) / rel;
}

IPair I1_I2(const Profile& f) {
  const double i1 = integrate_gl([&](double y) { return f.F2_over_1mf2(y); }, 0.0, 1.0, kOrder, kPanels);
  return {i1, 0.5 - f.moment()};
}

double I2_via_F(const Profile& f) {
  return -0.5 * integrate_gl([&](double y) { return f.F(y); }, 0.0, 1.0, kOrder, kPanels);
}

JkResult J_k(const Profile& f, const GrowthRate& a, double epsilon, int k, const PhysicalParams& p,
             const JkOptions& opt) {
  if (k < 0 || k > 4) throw std::invalid_argument("k must lie in 0..4");
  if (opt.depth < 2) throw std::invalid_argument("Richardson depth must be >= 2");
  JkResult res;
  if (k == 0) {
    res.samples.assign(opt.depth, 0.0);
    return res;  // a(0) = 0 makes the deficit vanish at t = 0
  }
  const double t0 = opt.t0 > 0.0 ? opt.t0 : 1e-2 * std::sqrt(p.L / p.gA());
  std::vector<double> col(opt.depth);
  for (int j = 0; j < opt.depth; ++j) {
    const double t = t0 * std::pow(2.0, -j);
    col[j] = energy_deficit(f, a, epsilon, t, p) / std::pow(t, k);
  }
  res.samples = col;
  // Tableau: each level removes the next power of t.
  std::vector<double> diag{col[0]};
  for (int m = 1; m < opt.depth; ++m) {
    const double w = std::pow(2.0, m);
    for (int j = 0; j + m < opt.depth; ++j) col[j] = (w * col[j + 1] - col[j]) / (w - 1.0);
    diag.push_back(col[0]);
  }
  res.value = diag.back();
  double scale = 0.0;
  for (double s : res.samples) scale = std::max(scale, std::abs(s));
  const double prev = diag[diag.size() - 2];
  res.converged = std::abs(res.value - prev) <= opt.rel_tol * std::max(std::abs(res.value), 1e-8 * scale) ||
                  std::abs(res.value - prev) <= 1e-14 * std::max(1.0, scale);
  return res;
}

double J_tilde(const IPair& I, double c, double gA) {
  if (c < 0.0) throw std::invalid_argument("J_tilde needs c >= 0");
  return 0.5 * c * c * c * I.I1 - 0.5 * c * c * gA * I.I2;
}

double J_tilde(const Profile& f, double c, double gA) { return J_tilde(I1_I2(f), c, gA); }

double l2_inner(const Fn& u, const Fn& w, const std::vector<double>& breaks) {
  std::vector<double> br{0.0};
  for (double b : breaks)
    if (b > 0.0 && b < 1.0) br.push_back(b);
  br.push_back(1.0);
  std::sort(br.begin(), br.end());
  double s = 0.0;
  for (std::size_t k = 0; k + 1 < br.size(); ++k) {
    s += integrate_gl([&](double y) { return u(y) * w(y); }, br[k], br[k + 1], kOrder, kPanels);
  }
  return s;
}

double S_of(const Fn& f, const std::vector<double>& breaks) { return l2_inner(f, f, breaks) - 1.0 / 3.0; }

double J_hat(const Fn& f, const std::vector<double>& breaks) {
  const Fn minus = [&](double y) { return f(y) - y; };
  const Fn plus = [&](double y) { return f(y) + y; };
  const double ip = l2_inner(minus, plus, breaks);
  return l2_inner(minus, minus, breaks) - 0.75 * ip * ip;
}

double J_hat(const Profile& f) {
  return J_hat([&](double y) { return f.f(y); });
}

Fn grad_J_hat(const Fn& f, const std::vector<double>& breaks) {
  const double s = S_of(f, breaks);
  return [f, s](double y) { return (2.0 - 3.0 * s) * f(y) - 2.0 * y; };
}

AdmissibilityVerdict admissibility(const EnergyTrace& trace, double rel_tol) {
  AdmissibilityVerdict v;
  const double slack = rel_tol * std::abs(trace.E0);
  for (std::size_t i = 0; i < trace.samples.size(); ++i) {
    const double e = trace.samples[i].second;
    const double excess = e - trace.E0;
    if (excess > slack) {
      if (v.admissible) v.first_violation = static_cast<long>(i);
      v.admissible = false;
      v.worst_excess = std::max(v.worst_excess, excess);
    }
    if (i > 0) {
      const double prev = trace.samples[i - 1].second;
      if (e > prev + slack) v.monotone = false;
      if (!(e < prev)) v.strictly_decreasing = false;
    }
  }
  return v;
}

}  // namespace rtmix

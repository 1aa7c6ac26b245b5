#include "rtmix/ode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rtmix {

namespace {

constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200, e6 = 22.0 / 525,
                 e7 = -1.0 / 40;

}  // namespace

OdeState dopri_step(const OdeRhs& f, double t, const OdeState& y, double h, OdeState* err) {
  const OdeState k1 = f(t, y);
  const OdeState k2 = f(t + c2 * h, y + h * a21 * k1);
  const OdeState k3 = f(t + c3 * h, y + h * (a31 * k1 + a32 * k2));
  const OdeState k4 = f(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
  const OdeState k5 = f(t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
  const OdeState k6 = f(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
  OdeState y1 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
  if (err) {
    const OdeState k7 = f(t + h, y1);
    *err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
  }
  return y1;
}

OdeState OdeSolution::at(double time, const OdeRhs& f) const {
  if (t.empty()) throw std::logic_error("empty ODE solution");
  if (time < t.front() || time > t.back()) throw std::out_of_range("time outside solved range");
  auto it = std::upper_bound(t.begin(), t.end(), time);
  const std::size_t i = it == t.begin() ? 0 : static_cast<std::size_t>(it - t.begin()) - 1;
  if (time == t[i]) return y[i];
  return dopri_step(f, t[i], y[i], time - t[i]);
}

OdeSolution solve_dopri(const OdeRhs& f, double t0, const OdeState& y0, double t1, const OdeOptions& opt,
                        const OdeEvent& event) {
  if (!(t1 > t0)) throw std::invalid_argument("solve_dopri needs t1 > t0");
  OdeSolution sol;
  sol.t.push_back(t0);
  sol.y.push_back(y0);
  double t = t0, h = opt.h0 > 0.0 ? opt.h0 : 1e-3 * (t1 - t0);
  OdeState y = y0;
  double g_prev = event ? event(t, y) : 0.0;
  for (long step = 0; step < opt.max_steps && t < t1; ++step) {
    h = std::min(h, t1 - t);
    OdeState err;
    const OdeState yn = dopri_step(f, t, y, h, &err);
    double en = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      const double sc = opt.abs_tol + opt.rel_tol * std::max(std::abs(y[i]), std::abs(yn[i]));
      en = std::max(en, std::abs(err[i]) / sc);
    }
    if (en > 1.0) {
      ++sol.rejected;
      h *= std::max(0.2, 0.9 * std::pow(en, -0.2));
      if (h < opt.h_min) throw std::runtime_error("ODE step size underflow");
      continue;
    }
    if (event) {
      const double g = event(t + h, yn);
      if (g_prev > 0.0 && g <= 0.0) {
        double lo = 0.0, hi = h;
        while (hi - lo > opt.event_tol) {
          const double mid = 0.5 * (lo + hi);
          if (event(t + mid, dopri_step(f, t, y, mid)) > 0.0) {
            lo = mid;
          } else {
            hi = mid;
          }
        }
        sol.t.push_back(t + hi);
        sol.y.push_back(dopri_step(f, t, y, hi));
        sol.event_time = t + hi;
        return sol;
      }
      g_prev = g;
    }
    t += h;
    y = yn;
    sol.t.push_back(t);
    sol.y.push_back(y);
    h *= std::min(5.0, 0.9 * std::pow(std::max(en, 1e-10), -0.2));
  }
  return sol;
}

}  // namespace rtmix

#pragma once

#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace rtmix {

using OdeState = Eigen::VectorXd;
using OdeRhs = std::function<OdeState(double, const OdeState&)>;
/// Event function; a sign change from positive to non-positive stops the solve.
using OdeEvent = std::function<double(double, const OdeState&)>;

struct OdeOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  double h0 = 0.0;  // 0 picks a default from the interval length
  double h_min = 1e-14;
  double event_tol = 1e-12;  // bisection resolution in t
  long max_steps = 1000000;
};

struct OdeSolution {
  std::vector<double> t;
  std::vector<OdeState> y;
  std::optional<double> event_time;
  long rejected = 0;

  /// State at an arbitrary time inside the solved range, re-stepped from the
  /// nearest accepted point with the same tableau.
  OdeState at(double time, const OdeRhs& f) const;
};

/// One Dormand-Prince step; returns the 5th order solution and fills the
/// embedded error estimate.
OdeState dopri_step(const OdeRhs& f, double t, const OdeState& y, double h, OdeState* err = nullptr);

/// Adaptive Dormand-Prince 5(4) from t0 to t1 (t1 > t0). When `event` is
/// given, the solve ends at its first root, located by bisection.
OdeSolution solve_dopri(const OdeRhs& f, double t0, const OdeState& y0, double t1, const OdeOptions& opt = {},
                        const OdeEvent& event = nullptr);

}  // namespace rtmix

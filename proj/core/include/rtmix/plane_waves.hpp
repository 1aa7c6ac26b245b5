#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "rtmix/cutoff.hpp"
#include "rtmix/jet.hpp"
#include "rtmix/state.hpp"

namespace rtmix {

enum class WaveKind { euler2d, euler3d, density };

std::string to_string(WaveKind k);

struct WaveOptions {
  int N = 10;
  double cutoff_eps = 0.1;
  double gA = 1.0;
  /// Support B_1 x (-1,1) with chi(x,t) = chi_a(x) chi_b(t) instead of the
  /// space-time ball.
  bool cylinder = false;
};

/// Residuals of dt v + div(sigma + p id) + gA rho e_n, div v, dt rho + div m.
using SystemResidual = std::array<double, 3>;

/// A localized plane wave. Every component of the state is a fixed linear
/// combination of partial derivatives of s = sin(N(x.xi + t c)) chi(x,t), so
/// values, exact derivatives and half-space integrals all come from jets of s.
class WaveField {
 public:
  struct Term {
    double coef;
    MultiIndex alpha;  // variables 0..n-1 are x, n is t
  };
  using Combo = std::vector<Term>;

  static WaveField density(const StateVector& zbar, const Vec& xi, double c, const WaveOptions& opt);
  static WaveField euler2d(const StateVector& zbar, const Vec& xi, double c, const WaveOptions& opt);
  static WaveField euler3d(const StateVector& zbar, const Vec& xi, double c, const WaveOptions& opt);

  WaveKind kind() const { return kind_; }
  int dim() const { return n_; }
  const WaveOptions& options() const { return opt_; }
  const Vec& xi() const { return xi_; }
  double c() const { return c_; }
  const StateVector& target() const { return target_; }
  /// The part of the target this wave oscillates along: (rho, m) for the
  /// density wave, (sigma, p) for the Euler waves.
  const StateVector& segment_end() const { return segment_end_; }
  /// k coefficients of the Euler potentials (one for 2d, three for 3d).
  const std::vector<double>& k() const { return k_; }

  StateVector sample(const Vec& x, double t) const;
  SystemResidual exact_residual(const Vec& x, double t) const;

  /// Integral of every state component over {y in support : nhat.y > s0},
  /// where y = (x,t) and nhat is a unit vector in R^{n+1}. With `spatial`
  /// the integral is over x only at the fixed time `t` and nhat lives in R^n.
  StateVector half_space_integral(const Vec& nhat, double s0, int nodes) const;
  StateVector spatial_half_space_integral(const Vec& nhat, double s0, double t, int nodes) const;

  bool in_support(const Vec& x, double t) const;

 private:
  WaveField(WaveKind kind, int n, const WaveOptions& opt);

  Jet s_jet(const Vec& y, int order) const;
  StateVector combine(const std::function<double(const Term&)>& term) const;
  StateVector slice_integral(const Vec& nhat, double s0, int nodes, bool spatial, double t) const;

  WaveKind kind_;
  int n_;
  WaveOptions opt_;
  PlateauCutoff cutoff_;
  Vec xi_;
  double c_ = 0.0;
  StateVector target_;
  StateVector segment_end_;
  std::vector<double> k_;

  Combo rho_;
  std::vector<Combo> v_, m_;
  std::vector<Combo> stress_;  // row-major n x n
  int max_order_ = 0;
};

/// Coefficient k1 with S = k1 xi_perp (x) xi_perp in two dimensions.
double euler2d_coefficient(const Mat& stress, const Vec& xi);

/// (k1, k2, k3) with S = k1 a(x)a + k2 b(x)b + k3 (a(x)b + b(x)a) for the
/// pivoted pair (a, b) orthogonal to xi; `residual` receives the
/// decomposition error and `perm` the coordinate permutation used.
std::array<double, 3> euler3d_coefficients(const Mat& stress, const Vec& xi, double* residual = nullptr,
                                           std::array<int, 3>* perm = nullptr);

struct ResidualRow {
  int N;
  double h;
  SystemResidual res;
};

struct LinearSystemReport {
  std::vector<ResidualRow> rows;  // h, h/2
  double order = 0.0;             // log2 of the max-norm ratio
  double exact_max = 0.0;         // residual with exact differentiation
};

/// Deterministic probe points inside the support (radius <= 0.95).
std::vector<Vec> wave_probes(int dims, int count);

SystemResidual fd_residual(const WaveField& f, double h, const std::vector<Vec>& probes);

/// Central-difference residuals at h and h/2 and the fitted order.
LinearSystemReport verify_linear_system(const WaveField& f, double h, int probes = 64);

struct WavePropertyReport {
  int N = 0;
  double segment_distance = 0.0;  // max over samples of d(z_N, [-zbar, zbar])
  double weak_proxy = 0.0;        // sup over s0 of |half-space integral|
  double mass_ratio = 0.0;        // int |pi z_N|^2 / |pi zbar|^2
};

struct WavePropertyOptions {
  int segment_samples = 30000;
  int mass_samples = 20000;
  int slices = 0;  // s0 samples; 0 picks a count that resolves the oscillation
  int slice_nodes = 12;
};

WavePropertyReport verify_wave_properties(const WaveField& f, const WavePropertyOptions& opt = {});

/// Time-sliced proxy for the cylinder variant: sup over t and s0 of the
/// spatial half-space integral.
double time_sliced_weak_proxy(const WaveField& f, int t_samples, int slices, int nodes);

/// Slope of log(values) against log(N) by least squares.
double loglog_slope(const std::vector<double>& N, const std::vector<double>& values);

double segment_distance(const StateVector& z, const StateVector& end);

}  // namespace rtmix

#include "rtmix/plane_waves.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rtmix/quadrature.hpp"

namespace rtmix {

std::string to_string(WaveKind k) {
  switch (k) {
    case WaveKind::euler2d: return "euler2d";
    case WaveKind::euler3d: return "euler3d";
    case WaveKind::density: return "density";
  }
  return "density";
}

namespace {

MultiIndex idx(std::initializer_list<int> vars) {
  MultiIndex a{0, 0, 0, 0};
  for (int v : vars) ++a[v];
  return a;
}

void check_eta(const Vec& xi, double c, int n) {
  if (xi.size() != n) throw std::invalid_argument("xi has the wrong dimension");
  if (!(xi.norm() > 0.0) || !std::isfinite(c)) throw std::invalid_argument("degenerate wave certificate");
}

}  // namespace

WaveField::WaveField(WaveKind kind, int n, const WaveOptions& opt)
    : kind_(kind), n_(n), opt_(opt), cutoff_(opt.cutoff_eps) {
  if (opt.N < 1) throw std::invalid_argument("N must be >= 1");
  v_.resize(n);
  m_.resize(n);
  stress_.resize(n * n);
}

double euler2d_coefficient(const Mat& stress, const Vec& xi) {
  const Vec perp = (Vec(2) << -xi[1], xi[0]).finished();
  return perp.dot(stress * perp) / std::pow(perp.squaredNorm(), 2);
}

std::array<double, 3> euler3d_coefficients(const Mat& stress, const Vec& xi, double* residual,
                                           std::array<int, 3>* perm) {
  // Put the largest |xi_j| in the middle slot so both perpendicular vectors
  // are nonzero.
  Eigen::Index j;
  xi.cwiseAbs().maxCoeff(&j);
  std::array<int, 3> pi{0, 1, 2};
  if (j != 1) std::swap(pi[1], pi[static_cast<int>(j)]);
  Vec xp(3);
  for (int a = 0; a < 3; ++a) xp[a] = xi[pi[a]];
  Mat sp(3, 3);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) sp(a, b) = stress(pi[a], pi[b]);

  const Vec a1 = (Vec(3) << -xp[1], xp[0], 0.0).finished();
  const Vec a2 = (Vec(3) << 0.0, -xp[2], xp[1]).finished();
  const std::array<Mat, 3> basis = {outer(a1, a1), outer(a2, a2), sym_outer(a1, a2)};
  Eigen::Matrix<double, 6, 3> lhs;
  Eigen::Matrix<double, 6, 1> rhs;
  int r = 0;
  for (int a = 0; a < 3; ++a) {
    for (int b = a; b < 3; ++b, ++r) {
      for (int k = 0; k < 3; ++k) lhs(r, k) = basis[k](a, b);
      rhs[r] = sp(a, b);
    }
  }
  const Eigen::Vector3d k = lhs.colPivHouseholderQr().solve(rhs);
  if (residual) {
    Mat rec = k[0] * basis[0] + k[1] * basis[1] + k[2] * basis[2];
    *residual = (rec - sp).norm();
  }
  if (perm) *perm = pi;
  return {k[0], k[1], k[2]};
}

WaveField WaveField::density(const StateVector& zbar, const Vec& xi, double c, const WaveOptions& opt) {
  const int n = zbar.dim();
  check_eta(xi, c, n);
  if (c == 0.0) throw std::invalid_argument("density wave needs c != 0");
  Vec eta(n + 1);
  eta.head(n) = xi;
  eta[n] = c;
  if (std::abs(zbar.m.dot(xi) + zbar.rho * c) > 1e-10 * (1.0 + zbar.norm()) * eta.norm()) {
    throw std::invalid_argument("density wave: m.xi + rho c != 0");
  }
  WaveField w(WaveKind::density, n, opt);
  w.xi_ = xi;
  w.c_ = c;
  w.target_ = zbar;
  w.segment_end_ = StateVector::zero(n);
  w.segment_end_.rho = zbar.rho;
  w.segment_end_.m = zbar.m;

  const double x2 = xi.squaredNorm();
  const Mat Mt = zbar.m.dot(xi) / (c * c * x2 * x2) * outer(xi, xi) - sym_outer(zbar.m, xi) / (c * c * x2);
  const double scale = std::pow(static_cast<double>(opt.N), -3);
  const int t = n, xn = n - 1;
  const double gA = opt.gA;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double k = scale * Mt(i, j);
      if (k == 0.0) continue;
      w.rho_.push_back({k, idx({t, i, j})});
      // (div Psi)_i = sum_j d_j Psi_ij
      w.v_[i].push_back({gA * k, idx({xn, j})});
      w.v_[xn].push_back({-gA * k, idx({i, j})});
      w.m_[i].push_back({-k, idx({t, t, j})});
      w.stress_[i * n + j].push_back({-gA * k, idx({t, xn})});
    }
  }
  w.max_order_ = 3;
  return w;
}

WaveField WaveField::euler2d(const StateVector& zbar, const Vec& xi, double c, const WaveOptions& opt) {
  if (zbar.dim() != 2) throw std::invalid_argument("euler2d needs n = 2");
  check_eta(xi, c, 2);
  const Mat S = zbar.sigma_plus_p();
  if ((S * xi).norm() > 1e-10 * (1.0 + S.norm()) * xi.norm()) {
    throw std::invalid_argument("euler2d: (sigma + p id) xi != 0");
  }
  WaveField w(WaveKind::euler2d, 2, opt);
  w.xi_ = xi;
  w.c_ = c;
  w.target_ = zbar;
  w.segment_end_ = StateVector{0.0, Vec::Zero(2), Vec::Zero(2), zbar.sigma, zbar.p};
  const double k1 = euler2d_coefficient(S, xi);
  w.k_ = {k1};
  const double k = k1 / std::pow(static_cast<double>(opt.N), 2);
  if (k != 0.0) {
    w.stress_[0].push_back({k, idx({1, 1})});
    w.stress_[1].push_back({-k, idx({0, 1})});
    w.stress_[2].push_back({-k, idx({0, 1})});
    w.stress_[3].push_back({k, idx({0, 0})});
  }
  w.max_order_ = 2;
  return w;
}

WaveField WaveField::euler3d(const StateVector& zbar, const Vec& xi, double c, const WaveOptions& opt) {
  if (zbar.dim() != 3) throw std::invalid_argument("euler3d needs n = 3");
  check_eta(xi, c, 3);
  const Mat S = zbar.sigma_plus_p();
  if ((S * xi).norm() > 1e-10 * (1.0 + S.norm()) * xi.norm()) {
    throw std::invalid_argument("euler3d: (sigma + p id) xi != 0");
  }
  double res = 0.0;
  std::array<int, 3> pi{};
  const auto kk = euler3d_coefficients(S, xi, &res, &pi);
  if (res > 1e-9 * (1.0 + S.norm())) throw std::invalid_argument("euler3d: decomposition residual too large");

  WaveField w(WaveKind::euler3d, 3, opt);
  w.xi_ = xi;
  w.c_ = c;
  w.target_ = zbar;
  w.segment_end_ = StateVector{0.0, Vec::Zero(3), Vec::Zero(3), zbar.sigma, zbar.p};
  w.k_ = {kk[0], kk[1], kk[2]};
  const double s = 1.0 / std::pow(static_cast<double>(opt.N), 2);
  // Potentials in permuted coordinates; d'_a = d_{pi[a]} and S_{pi[a] pi[b]} = S'_ab.
  auto put = [&](int a, int b, double coef, std::initializer_list<int> vars) {
    if (coef == 0.0) return;
    MultiIndex al{0, 0, 0, 0};
    for (int v : vars) ++al[pi[v]];
    w.stress_[pi[a] * 3 + pi[b]].push_back({coef, al});
  };
  const double k1 = s * kk[0], k2 = s * kk[1], k3 = s * kk[2];
  put(0, 0, k1, {1, 1});
  put(0, 1, -k1, {0, 1});
  put(1, 0, -k1, {0, 1});
  put(1, 1, k1, {0, 0});
  put(1, 1, k2, {2, 2});
  put(1, 2, -k2, {1, 2});
  put(2, 1, -k2, {1, 2});
  put(2, 2, k2, {1, 1});
  put(0, 1, k3, {1, 2});
  put(1, 0, k3, {1, 2});
  put(0, 2, -k3, {1, 1});
  put(2, 0, -k3, {1, 1});
  put(1, 1, -2.0 * k3, {0, 2});
  put(1, 2, k3, {0, 1});
  put(2, 1, k3, {0, 1});
  w.max_order_ = 2;
  return w;
}

bool WaveField::in_support(const Vec& x, double t) const {
  if (opt_.cylinder) return x.squaredNorm() < 1.0 && std::abs(t) < 1.0;
  return x.squaredNorm() + t * t < 1.0;
}

Jet WaveField::s_jet(const Vec& y, int order) const {
  const int d = n_ + 1;
  auto space = JetSpace::get(d, order);
  const double N = opt_.N;
  std::vector<double> grad(d);
  double theta = 0.0;
  for (int k = 0; k < n_; ++k) {
    grad[k] = N * xi_[k];
    theta += grad[k] * y[k];
  }
  grad[n_] = N * c_;
  theta += grad[n_] * y[n_];

  std::vector<double> sin_taylor(order + 1);
  double fact = 1.0;
  for (int k = 0; k <= order; ++k) {
    if (k > 0) fact *= k;
    const double val = (k % 4 == 0) ? std::sin(theta) : (k % 4 == 1) ? std::cos(theta)
                     : (k % 4 == 2) ? -std::sin(theta) : -std::cos(theta);
    sin_taylor[k] = val / fact;
  }
  const Jet sj = Jet::compose(sin_taylor, Jet::affine(space, theta, grad));

  auto radial = [&](int first, int last) {
    Jet u = Jet::constant(space, 0.0);
    for (int k = first; k < last; ++k) {
      std::vector<double> g(d, 0.0);
      g[k] = 1.0;
      const Jet yk = Jet::affine(space, y[k], g);
      u += yk * yk;
    }
    return Jet::compose(cutoff_.taylor(u.value(), order), u);
  };
  if (opt_.cylinder) return sj * (radial(0, n_) * radial(n_, n_ + 1));
  return sj * radial(0, n_ + 1);
}

StateVector WaveField::combine(const std::function<double(const Term&)>& term) const {
  auto eval = [&](const Combo& cb) {
    double s = 0.0;
    for (const Term& t : cb) s += t.coef * term(t);
    return s;
  };
  StateVector z = StateVector::zero(n_);
  z.rho = eval(rho_);
  Mat S(n_, n_);
  for (int i = 0; i < n_; ++i) {
    z.v[i] = eval(v_[i]);
    z.m[i] = eval(m_[i]);
    for (int j = 0; j < n_; ++j) S(i, j) = eval(stress_[i * n_ + j]);
  }
  z.sigma = S - (S.trace() / n_) * Mat::Identity(n_, n_);
  z.p = S.trace() / n_;
  return z;
}

StateVector WaveField::sample(const Vec& x, double t) const {
  if (!in_support(x, t)) return StateVector::zero(n_);
  Vec y(n_ + 1);
  y << x, t;
  const Jet s = s_jet(y, max_order_);
  return combine([&](const Term& tm) { return s.derivative(tm.alpha); });
}

SystemResidual WaveField::exact_residual(const Vec& x, double t) const {
  if (!in_support(x, t)) return {0.0, 0.0, 0.0};
  Vec y(n_ + 1);
  y << x, t;
  const Jet s = s_jet(y, max_order_ + 1);
  auto d = [&](const Combo& cb, int var) {
    double acc = 0.0;
    for (const Term& tm : cb) {
      MultiIndex a = tm.alpha;
      ++a[var];
      acc += tm.coef * s.derivative(a);
    }
    return acc;
  };
  auto value = [&](const Combo& cb) {
    double acc = 0.0;
    for (const Term& tm : cb) acc += tm.coef * s.derivative(tm.alpha);
    return acc;
  };
  double r1 = 0.0, r2 = 0.0, r3 = d(rho_, n_);
  for (int i = 0; i < n_; ++i) {
    double row = d(v_[i], n_);
    for (int j = 0; j < n_; ++j) row += d(stress_[i * n_ + j], j);
    if (i == n_ - 1) row += opt_.gA * value(rho_);
    r1 = std::max(r1, std::abs(row));
    r2 += d(v_[i], i);
    r3 += d(m_[i], i);
  }
  return {r1, std::abs(r2), std::abs(r3)};
}

StateVector WaveField::slice_integral(const Vec& nhat, double s0, int nodes, bool spatial, double t) const {
  // Divergence theorem: over {nhat.y > s0}, int d_k g = -nhat_k int_{plane} g.
  const int d = spatial ? n_ : n_ + 1;
  const int sd = d - 1;
  const double R2 = 1.0 - s0 * s0;
  if (R2 <= 0.0) return StateVector::zero(n_);
  const double R = std::sqrt(R2);

  const Mat basis = orthogonal_complement(nhat);

  const GaussRule& g = gauss_legendre(nodes);
  std::vector<std::pair<Vec, double>> pts;
  if (sd == 1) {
    for (int i = 0; i < nodes; ++i) pts.push_back({(Vec(1) << R * g.nodes[i]).finished(), R * g.weights[i]});
  } else if (sd == 2) {
    const int na = 2 * nodes;
    for (int i = 0; i < nodes; ++i) {
      const double r = 0.5 * R * (g.nodes[i] + 1.0), wr = 0.5 * R * g.weights[i] * r;
      for (int k = 0; k < na; ++k) {
        const double ph = 2.0 * std::numbers::pi * k / na;
        pts.push_back({(Vec(2) << r * std::cos(ph), r * std::sin(ph)).finished(), wr * 2.0 * std::numbers::pi / na});
      }
    }
  } else {
    const int na = 2 * nodes;
    for (int i = 0; i < nodes; ++i) {
      const double r = 0.5 * R * (g.nodes[i] + 1.0), wr = 0.5 * R * g.weights[i] * r * r;
      for (int j = 0; j < nodes; ++j) {
        const double ct = g.nodes[j], st = std::sqrt(1.0 - ct * ct);
        for (int k = 0; k < na; ++k) {
          const double ph = 2.0 * std::numbers::pi * k / na;
          pts.push_back({(Vec(3) << r * st * std::cos(ph), r * st * std::sin(ph), r * ct).finished(),
                         wr * g.weights[j] * 2.0 * std::numbers::pi / na});
        }
      }
    }
  }

  StateVector acc = StateVector::zero(n_);
  const int order = std::max(0, max_order_ - 1);
  for (const auto& [b, wgt] : pts) {
    const Vec yp = s0 * nhat + basis * b;
    Vec y(n_ + 1);
    if (spatial) {
      y << yp, t;
    } else {
      y = yp;
    }
    const Jet s = s_jet(y, order);
    acc += wgt * combine([&](const Term& tm) {
      for (int k = 0; k < d; ++k) {
        if (tm.alpha[k] == 0) continue;
        MultiIndex a = tm.alpha;
        --a[k];
        return -nhat[k] * s.derivative(a);
      }
      throw std::logic_error("term without a derivative along the slicing variables");
    });
  }
  return acc;
}

StateVector WaveField::half_space_integral(const Vec& nhat, double s0, int nodes) const {
  if (opt_.cylinder) throw std::invalid_argument("space-time half-space integral needs the ball variant");
  if (nhat.size() != n_ + 1) throw std::invalid_argument("nhat must have n+1 components");
  return slice_integral(nhat.normalized(), s0, nodes, false, 0.0);
}

StateVector WaveField::spatial_half_space_integral(const Vec& nhat, double s0, double t, int nodes) const {
  if (nhat.size() != n_) throw std::invalid_argument("nhat must have n components");
  if (n_ < 2) throw std::invalid_argument("spatial slices need n >= 2");
  if (!opt_.cylinder) throw std::invalid_argument("time slices are defined for the cylinder variant");
  return slice_integral(nhat.normalized(), s0, nodes, true, t);
}

// ---------------------------------------------------------------------------

std::vector<Vec> wave_probes(int dims, int count) {
  std::vector<Vec> out;
  for (long k = 1; static_cast<int>(out.size()) < count; ++k) {
    const auto h = halton(k, dims);
    Vec y(dims);
    for (int i = 0; i < dims; ++i) y[i] = 2.0 * h[i] - 1.0;
    if (y.norm() <= 0.95) out.push_back(y);
  }
  return out;
}

SystemResidual fd_residual(const WaveField& f, double h, const std::vector<Vec>& probes) {
  const int n = f.dim();
  SystemResidual worst{0.0, 0.0, 0.0};
  for (const Vec& y : probes) {
    const Vec x = y.head(n);
    const double t = y[n];
    auto at = [&](int var, double s) {
      Vec xs = x;
      double ts = t;
      if (var == n) ts += s; else xs[var] += s;
      return f.sample(xs, ts);
    };
    std::vector<StateVector> plus, minus;
    for (int k = 0; k <= n; ++k) {
      plus.push_back(at(k, h));
      minus.push_back(at(k, -h));
    }
    auto dd = [&](int k) { return (1.0 / (2.0 * h)) * (plus[k] - minus[k]); };
    const StateVector centre = f.sample(x, t);
    const StateVector dt = dd(n);
    double r1 = 0.0, r2 = 0.0, r3 = dt.rho;
    Vec mom = dt.v;
    mom[n - 1] += f.options().gA * centre.rho;
    for (int k = 0; k < n; ++k) {
      const StateVector dk = dd(k);
      mom += dk.sigma.col(k);
      mom[k] += dk.p;
      r2 += dk.v[k];
      r3 += dk.m[k];
    }
    r1 = mom.cwiseAbs().maxCoeff();
    worst[0] = std::max(worst[0], r1);
    worst[1] = std::max(worst[1], std::abs(r2));
    worst[2] = std::max(worst[2], std::abs(r3));
  }
  return worst;
}

LinearSystemReport verify_linear_system(const WaveField& f, double h, int probes) {
  if (!(h > 0.0)) throw std::invalid_argument("grid_h must be positive");
  const auto pts = wave_probes(f.dim() + 1, probes);
  LinearSystemReport rep;
  const SystemResidual a = fd_residual(f, h, pts);
  const SystemResidual b = fd_residual(f, 0.5 * h, pts);
  rep.rows = {{f.options().N, h, a}, {f.options().N, 0.5 * h, b}};
  const double ma = std::max({a[0], a[1], a[2]}), mb = std::max({b[0], b[1], b[2]});
  rep.order = (ma > 0.0 && mb > 0.0) ? std::log2(ma / mb) : 0.0;
  for (const Vec& y : pts) {
    const auto r = f.exact_residual(y.head(f.dim()), y[f.dim()]);
    rep.exact_max = std::max({rep.exact_max, r[0], r[1], r[2]});
  }
  return rep;
}

double segment_distance(const StateVector& z, const StateVector& end) {
  const auto dot = [](const StateVector& a, const StateVector& b) {
    return a.rho * b.rho + a.v.dot(b.v) + a.m.dot(b.m) + (a.sigma.array() * b.sigma.array()).sum() + a.p * b.p;
  };
  const double ee = dot(end, end);
  const double s = ee > 0.0 ? std::clamp(dot(z, end) / ee, -1.0, 1.0) : 0.0;
  return (z - s * end).norm();
}

WavePropertyReport verify_wave_properties(const WaveField& f, const WavePropertyOptions& opt) {
  const int n = f.dim(), d = n + 1;
  WavePropertyReport rep;
  rep.N = f.options().N;

  // Quasi-random samples over the bounding cube, restricted to the support.
  double mass = 0.0;
  long inside = 0, drawn = 0;
  const int total = std::max(opt.segment_samples, opt.mass_samples);
  for (long k = 1; drawn < total; ++k, ++drawn) {
    const auto h = halton(k, d);
    Vec x(n);
    for (int i = 0; i < n; ++i) x[i] = 2.0 * h[i] - 1.0;
    const double t = 2.0 * h[n] - 1.0;
    if (!f.in_support(x, t)) continue;
    ++inside;
    const StateVector z = f.sample(x, t);
    if (drawn < opt.segment_samples) rep.segment_distance = std::max(rep.segment_distance, segment_distance(z, f.segment_end()));
    if (drawn < opt.mass_samples) mass += std::pow(z.pi_norm(), 2);
  }
  const double cube = std::pow(2.0, d);
  const double pin = f.segment_end().pi_norm();
  rep.mass_ratio = pin > 0.0 ? (mass * cube / std::min<long>(opt.mass_samples, total)) / (pin * pin) : 0.0;
  (void)inside;

  if (!f.options().cylinder) {
    Vec nhat(d);
    nhat << f.xi(), f.c();
    nhat.normalize();
    const double period = 2.0 * std::numbers::pi / (f.options().N * std::hypot(f.xi().norm(), f.c()));
    const int slices = opt.slices > 0 ? opt.slices : std::max(64, static_cast<int>(std::ceil(16.0 / period)));
    for (int i = 0; i < slices; ++i) {
      const double s0 = -1.0 + 2.0 * (i + 0.5) / slices;
      const StateVector z = f.half_space_integral(nhat, s0, opt.slice_nodes);
      rep.weak_proxy = std::max(rep.weak_proxy, z.norm());
    }
  } else {
    rep.weak_proxy = time_sliced_weak_proxy(f, 9, 0, opt.slice_nodes);
  }
  return rep;
}

double time_sliced_weak_proxy(const WaveField& f, int t_samples, int slices, int nodes) {
  const Vec nhat = f.xi().normalized();
  const double period = 2.0 * std::numbers::pi / (f.options().N * f.xi().norm());
  if (slices <= 0) slices = std::max(64, static_cast<int>(std::ceil(16.0 / period)));
  double sup = 0.0;
  for (int j = 0; j < t_samples; ++j) {
    const double t = -1.0 + 2.0 * (j + 0.5) / t_samples;
    for (int i = 0; i < slices; ++i) {
      const double s0 = -1.0 + 2.0 * (i + 0.5) / slices;
      sup = std::max(sup, f.spatial_half_space_integral(nhat, s0, t, nodes).norm());
    }
  }
  return sup;
}

double loglog_slope(const std::vector<double>& N, const std::vector<double>& values) {
  if (N.size() != values.size() || N.size() < 2) throw std::invalid_argument("slope needs >= 2 pairs");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(N.size());
  for (std::size_t i = 0; i < N.size(); ++i) {
    const double x = std::log(N[i]), y = std::log(values[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace rtmix

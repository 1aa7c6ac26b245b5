#include "rtmix/selection.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>

#include "rtmix/quadrature.hpp"

namespace rtmix {

namespace {

constexpr int kOrder = 64;
constexpr int kPanels = 4;
constexpr int kFeasGrid = 2000;

Profile profile_of(const std::vector<double>& x) { return Profile({x.begin(), x.end() - 1}); }

bool feasible_point(const std::vector<double>& x) {
  return x.back() >= 0.0 && profile_of(x).feasible(kFeasGrid);
}

double norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double e : v) s += e * e;
  return std::sqrt(s);
}

}  // namespace

void I_gradients(const Profile& f, std::vector<double>& dI1, std::vector<double>& dI2) {
  const int K = f.size();
  dI1.assign(K, 0.0);
  dI2.assign(K, 0.0);
  const GaussRule& g = gauss_legendre(kOrder);
  for (int p = 0; p < kPanels; ++p) {
    const double lo = static_cast<double>(p) / kPanels, half = 0.5 / kPanels;
    for (int i = 0; i < kOrder; ++i) {
      const double y = lo + half * (g.nodes[i] + 1.0), w = half * g.weights[i];
      const double fy = f.f(y), rm = f.ratio_minus(y);
      for (int k = 1; k <= K; ++k) {
        const double s = std::sin(k * std::numbers::pi * y);
        dI1[k - 1] += w * (2.0 * f.dF_dc(y, k) * rm / (1.0 + fy) + 2.0 * fy * s * rm * rm / ((1.0 + fy) * (1.0 + fy)));
      }
    }
  }
  for (int k = 1; k <= K; ++k) dI2[k - 1] = (k % 2 ? -1.0 : 1.0) / (k * std::numbers::pi);
}

double J_tilde_with_gradient(const std::vector<double>& x, double gA, std::vector<double>* grad) {
  const Profile f = profile_of(x);
  const double c = x.back();
  const IPair I = I1_I2(f);
  const double val = 0.5 * c * c * c * I.I1 - 0.5 * c * c * gA * I.I2;
  if (grad) {
    std::vector<double> d1, d2;
    I_gradients(f, d1, d2);
    grad->assign(x.size(), 0.0);
    for (int k = 0; k < f.size(); ++k) (*grad)[k] = 0.5 * c * c * c * d1[k] - 0.5 * c * c * gA * d2[k];
    grad->back() = 1.5 * c * c * I.I1 - c * gA * I.I2;
  }
  return val;
}

double balance_epsilon(const Profile& f, double c, double gA, int n, double* gap) {
  // lim G+-/t^4 = c^3 r+-^2 / 4 +- (n/8) eps gA c^2 y with r+- = F / (1 +- f).
  double num = 0.0, den = 0.0;
  const int m = 400;
  std::vector<double> ys, diff;
  for (int i = 1; i <= m; ++i) {
    const double y = static_cast<double>(i) / m;
    const double rp = f.ratio_plus(y), rm = f.ratio_minus(y);
    const double a = 0.25 * n * gA * c * c * y;
    const double b = 0.25 * c * c * c * (rm * rm - rp * rp);
    num += a * b;
    den += a * a;
    ys.push_back(a);
    diff.push_back(b);
  }
  double eps = den > 0.0 ? num / den : 0.0;
  eps = std::clamp(eps, 0.0, 2.0 / n);
  if (gap) {
    *gap = 0.0;
    for (std::size_t i = 0; i < ys.size(); ++i) *gap = std::max(*gap, std::abs(eps * ys[i] - diff[i]));
  }
  return eps;
}

namespace {

struct RunResult {
  std::vector<double> x;
  double value;
  int iterations;
  double grad_norm;
};

RunResult bfgs(std::vector<double> x, const SelectionOptions& opt) {
  const int d = static_cast<int>(x.size());
  std::vector<double> g;
  double fx = J_tilde_with_gradient(x, opt.gA, &g);
  Eigen::MatrixXd H = Eigen::MatrixXd::Identity(d, d);
  int it = 0;
  for (; it < opt.max_iterations; ++it) {
    if (norm(g) <= opt.step_tol) break;
    Eigen::VectorXd gv = Eigen::Map<Eigen::VectorXd>(g.data(), d);
    Eigen::VectorXd p = -H * gv;
    if (p.dot(gv) >= 0.0) {
      H.setIdentity();
      p = -gv;
    }
    double step = 1.0;
    std::vector<double> xn(d), gn;
    double fn = fx;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls, step *= 0.5) {
      for (int i = 0; i < d; ++i) xn[i] = x[i] + step * p[i];
      if (!feasible_point(xn)) continue;
      fn = J_tilde_with_gradient(xn, opt.gA, &gn);
      if (fn <= fx + 1e-4 * step * p.dot(gv)) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      if (H.isIdentity()) break;
      H.setIdentity();
      continue;
    }
    Eigen::VectorXd s(d), y(d);
    for (int i = 0; i < d; ++i) {
      s[i] = xn[i] - x[i];
      y[i] = gn[i] - g[i];
    }
    const double sy = s.dot(y);
    x = xn;
    g = gn;
    const double df = fx - fn;
    fx = fn;
    if (sy > 1e-300) {
      const double r = 1.0 / sy;
      const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(d, d);
      H = (I - r * s * y.transpose()) * H * (I - r * y * s.transpose()) + r * s * s.transpose();
    }
    if (s.norm() <= opt.step_tol && df <= opt.step_tol * std::abs(fx)) break;
  }
  return {x, fx, it, norm(g)};
}

}  // namespace

namespace {

std::optional<RunResult> run_restart(const SelectionOptions& opt, int r) {
  std::seed_seq seq{static_cast<std::uint32_t>(opt.seed), static_cast<std::uint32_t>(opt.seed >> 32),
                    static_cast<std::uint32_t>(r)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> coef(-1.0, 1.0), cdist(0.2, 1.5);
  std::vector<double> x(opt.basis_size + 1);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const double amp = 0.15 * std::pow(0.9, attempt);
    for (int k = 0; k < opt.basis_size; ++k) x[k] = amp * coef(rng) / (k + 1);
    x.back() = cdist(rng) * opt.gA;
    if (feasible_point(x)) return bfgs(x, opt);
  }
  return std::nullopt;
}

}  // namespace

SelectionResult minimize(const SelectionOptions& opt) {
  if (opt.basis_size < 1) throw std::invalid_argument("basis size K must be >= 1");
  if (opt.restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  std::vector<std::future<std::optional<RunResult>>> jobs;
  for (int r = 0; r < opt.restarts; ++r) jobs.push_back(std::async(std::launch::async, run_restart, opt, r));
  SelectionResult best;
  best.J4_star = std::numeric_limits<double>::infinity();
  // Merge in restart order so ties resolve the same way on every run.
  for (int r = 0; r < opt.restarts; ++r) {
    const std::optional<RunResult> run = jobs[r].get();
    if (!run) continue;
    ++best.restarts_run;
    if (run->value < best.J4_star) {
      best.J4_star = run->value;
      best.f_star = profile_of(run->x);
      best.c_star = run->x.back();
      best.iterations = run->iterations;
      best.gradient_norm = run->grad_norm;
      best.best_restart = r;
    }
  }
  if (best.restarts_run == 0) throw std::runtime_error("no feasible starting point found");
  best.epsilon_star = balance_epsilon(best.f_star, best.c_star, opt.gA, opt.n, &best.balance_gap);
  return best;
}

UniquenessReport audit_uniqueness(const SelectionResult& res, long n_probes, int basis_size, double gA,
                                  std::uint64_t seed) {
  UniquenessReport rep;
  rep.worst_gap = std::numeric_limits<double>::infinity();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0), cd(0.0, 2.0);
  std::vector<double> x(basis_size + 1);
  while (rep.probes < n_probes) {
    const double amp = std::pow(10.0, -3.0 * std::uniform_real_distribution<double>(0.0, 1.0)(rng));
    for (int k = 0; k < basis_size; ++k) x[k] = amp * 0.3 * u(rng) / (k + 1);
    x.back() = cd(rng) * gA;
    if (!feasible_point(x)) continue;
    ++rep.probes;
    const double gap = J_tilde_with_gradient(x, gA, nullptr) - res.J4_star;
    rep.worst_gap = std::min(rep.worst_gap, gap);
    if (gap < -1e-10) ++rep.violations;
  }

  // Local growth along a fixed random direction through the minimizer.
  std::vector<double> base(basis_size + 1, 0.0), dir(basis_size + 1);
  for (int k = 0; k < std::min(basis_size, res.f_star.size()); ++k) base[k] = res.f_star.coeffs()[k];
  base.back() = res.c_star;
  for (double& e : dir) e = u(rng);
  const double dn = norm(dir);
  for (double& e : dir) e /= dn;
  std::vector<double> ds, gaps;
  for (double delta : {4e-2, 2e-2, 1e-2}) {
    std::vector<double> y(base);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += delta * dir[i];
    if (!feasible_point(y)) {
      for (std::size_t i = 0; i < y.size(); ++i) y[i] = base[i] - delta * dir[i];
    }
    const double gap = J_tilde_with_gradient(y, gA, nullptr) - res.J4_star;
    if (gap > 0.0) {
      ds.push_back(delta);
      gaps.push_back(gap);
    }
  }
  if (ds.size() >= 2) {
    const double s = std::log(gaps.front() / gaps.back()) / std::log(ds.front() / ds.back());
    rep.local_growth_order = s;
  }
  return rep;
}

CriticalPointReport critical_point_audit() {
  // Within span{id}: grad J_hat(lambda id) = (3 lambda - lambda^3 - 2) id.
  Eigen::Matrix3d companion;
  companion << 0, 0, -2, 1, 0, 3, 0, 1, 0;
  const Eigen::Vector3cd roots = companion.eigenvalues();
  CriticalPointReport rep;
  for (int i = 0; i < 3; ++i) {
    if (std::abs(roots[i].imag()) > 1e-6) continue;
    double lam = roots[i].real();
    // Newton polish; the double root at 1 only converges linearly.
    for (int it = 0; it < 60; ++it) {
      const double p = lam * lam * lam - 3 * lam + 2, dp = 3 * lam * lam - 3;
      if (p == 0.0 || dp == 0.0) break;
      lam -= p / dp;
    }
    bool dup = false;
    for (double l : rep.lambdas) dup = dup || std::abs(l - lam) < 1e-6;
    if (dup) continue;
    rep.lambdas.push_back(lam);
  }
  std::sort(rep.lambdas.begin(), rep.lambdas.end());
  for (double lam : rep.lambdas) {
    const Fn f = [lam](double y) { return lam * y; };
    rep.S_values.push_back(S_of(f));
    const Fn g = grad_J_hat(f);
    rep.gradient_norms.push_back(std::sqrt(l2_inner(g, g)));
  }
  const Fn two = [](double y) { return 2.0 * y; };
  const Fn g2 = grad_J_hat(two);
  rep.gradient_norm_2id = std::sqrt(l2_inner(g2, g2));
  return rep;
}

}  // namespace rtmix

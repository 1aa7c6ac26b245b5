#include <cmath>
#include <vector>

#include "rtmix/wave_cone.hpp"

namespace rtmix {

std::string to_string(PerturbationBranch b) {
  switch (b) {
    case PerturbationBranch::muskat: return "muskat";
    case PerturbationBranch::euler_plus: return "euler_plus";
    case PerturbationBranch::euler_minus: return "euler_minus";
    case PerturbationBranch::k_prime_euler: return "k_prime_euler";
    case PerturbationBranch::none: return "none";
  }
  return "none";
}

namespace {

constexpr double kResolution = 1e-8;

bool admissible(const StateVector& z, const StateVector& dir, double t, const EnergyAtPoint& e) {
  for (double s : {1.0, -1.0}) {
    if (std::abs(z.rho + s * t * dir.rho) > 1.0) return false;
    if (classify(z + (s * t) * dir, e).cls == HullClass::outside) return false;
  }
  return true;
}

// Largest t in [0, hi] with z +- t dir admissible; the admissible set is an
// interval because the closure of U is convex.
double longest_step(const StateVector& z, const StateVector& dir, const EnergyAtPoint& e, double hi) {
  if (admissible(z, dir, hi, e)) return hi;
  double lo = 0.0;
  while (hi - lo > kResolution * std::max(1.0, lo)) {
    const double mid = 0.5 * (lo + hi);
    (admissible(z, dir, mid, e) ? lo : hi) = mid;
  }
  return lo;
}

double growing_bracket(const StateVector& z, const StateVector& dir, const EnergyAtPoint& e) {
  double hi = 1.0;
  while (hi < 1e8 && admissible(z, dir, hi, e)) hi *= 2.0;
  return hi;
}

struct Candidate {
  StateVector dir;
  PerturbationBranch branch;
};

// Euler direction confined to the eigenvector w of lambda_min(M); only that
// eigenvalue of M moves along the segment.
Candidate euler_candidate(const StateVector& z, double lambda) {
  const Mat M = matrix_M(z);
  const SymEigen eig = sym_eigen(M);
  const Vec w = eig.vectors.col(0);
  const Vec what = (z.m - z.rho * z.v) / (1.0 - z.rho * z.rho);
  const Vec u = z.v + (lambda - z.rho) * what;
  const Mat sbar = sym_outer(u, w) - 2.0 * u.dot(w) * outer(w, w);
  const ConeCertificate cert = euler_direction(w, sbar, lambda);
  return {cert.direction, lambda > 0 ? PerturbationBranch::euler_plus : PerturbationBranch::euler_minus};
}

}  // namespace

PerturbationResult perturbation_direction(const StateVector& z, const EnergyAtPoint& e, double min_norm) {
  const HullMembership hm = classify(z, e);
  if (hm.cls == HullClass::in_K || hm.cls == HullClass::outside) {
    throw std::invalid_argument("perturbation_direction needs a state in closure(U) \\ K");
  }
  PerturbationResult res;

  if (hm.cls == HullClass::K_plus_prime || hm.cls == HullClass::K_minus_prime) {
    const double s = hm.cls == HullClass::K_plus_prime ? 1.0 : -1.0;
    const Mat A = outer(z.v, z.v) - z.sigma;
    const SymEigen eig = sym_eigen(A);
    const Vec w = eig.vectors.col(0);
    const double mu = eig.values[0];
    const double b = z.v.dot(w);
    const double t = -std::abs(b) + std::sqrt(b * b + std::max(0.0, e(s) - mu));
    StateVector dir{0.0, w, s * w, sym_outer(z.v, w) - 2.0 * b * outer(w, w), 0.0};
    res.direction = t * dir;
    res.branch = PerturbationBranch::k_prime_euler;
  } else {
    const double tp = e(1.0) - T_pm(z, 1);
    const double tm = e(-1.0) - T_pm(z, -1);
    const double q = e(z.rho) - Q_of(z);
    const double scale = std::max({1.0, std::abs(e(1.0)), std::abs(e(-1.0))});
    const bool q_active = q <= 1e-12 * scale;
    const bool balanced = std::abs(tp - tm) <= 1e-12 * scale;

    std::vector<Candidate> order;
    const Candidate muskat{muskat_direction(z), PerturbationBranch::muskat};
    if (!q_active || balanced) {
      order = {muskat, euler_candidate(z, 1.0), euler_candidate(z, -1.0)};
    } else if (tm < tp) {
      // T_- is the tighter constraint: keep it fixed.
      order = {euler_candidate(z, 1.0), euler_candidate(z, -1.0), muskat};
    } else {
      order = {euler_candidate(z, -1.0), euler_candidate(z, 1.0), muskat};
    }
    for (const Candidate& cand : order) {
      double hi = cand.dir.rho != 0.0 ? 1.0 - std::abs(z.rho) : growing_bracket(z, cand.dir, e);
      if (cand.dir.rho != 0.0) hi /= std::abs(cand.dir.rho);
      const double t = longest_step(z, cand.dir, e, hi);
      if (t > 0.0) {
        res.direction = t * cand.dir;
        res.branch = cand.branch;
        break;
      }
    }
  }
  res.pi_norm = res.direction.v.size() ? res.direction.pi_norm() : 0.0;
  if (res.branch == PerturbationBranch::none) res.direction = StateVector::zero(z.dim());
  res.meets_min_norm = res.pi_norm >= min_norm && res.pi_norm > 0.0;
  return res;
}

}  // namespace rtmix

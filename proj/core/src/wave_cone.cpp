#include "rtmix/wave_cone.hpp"

#include <cmath>

#include <Eigen/SVD>

namespace rtmix {

Mat m_lambda(const StateVector& z) {
  const int n = z.dim();
  Mat out = Mat::Zero(n + 2, n + 1);
  out.topLeftCorner(n, n) = z.sigma_plus_p();
  out.block(0, n, n, 1) = z.v;
  out.block(n, 0, 1, n) = z.v.transpose();
  out.block(n + 1, 0, 1, n) = z.m.transpose();
  out(n + 1, n) = z.rho;
  return out;
}

Mat kernel_basis(const StateVector& z, double tol) {
  const Mat a = m_lambda(z);
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullV);
  const Vec& s = svd.singularValues();
  const double thr = tol * (s[0] + 1.0);
  int first = static_cast<int>(s.size());
  while (first > 0 && s[first - 1] <= thr) --first;
  return svd.matrixV().rightCols(static_cast<Eigen::Index>(s.size()) - first);
}

namespace {

bool guard_ok(const StateVector& z) { return z.rho != 0.0 || z.v.squaredNorm() > 0.0; }

ConeCertificate certify(const StateVector& z, const Vec& eta) {
  const int n = z.dim();
  ConeCertificate cert;
  cert.direction = z;
  cert.xi = eta.head(n);
  cert.c = eta[n];
  cert.residual = (m_lambda(z) * eta).norm() / eta.norm();
  return cert;
}

}  // namespace

std::optional<ConeCertificate> in_lambda(const StateVector& z, double tol) {
  if (!guard_ok(z)) return std::nullopt;
  const Mat k = kernel_basis(z, tol);
  if (k.cols() == 0) return std::nullopt;
  return certify(z, k.col(k.cols() - 1));
}

std::optional<ConeCertificate> in_lambda_prime(const StateVector& z, double tol) {
  if (!guard_ok(z)) return std::nullopt;
  const Mat k = kernel_basis(z, tol);
  if (k.cols() == 0) return std::nullopt;
  const int n = z.dim();
  // Projection of e_{n+1} onto the kernel maximizes |c| over unit kernel vectors.
  const Vec coeff = k.row(n).transpose();
  const double cmax = coeff.norm();
  if (cmax <= tol) return std::nullopt;
  const Vec eta = k * (coeff / cmax);
  return certify(z, eta);
}

std::optional<Vec> spatial_kernel(const StateVector& z, double tol) {
  const Mat k = kernel_basis(z, tol);
  const int n = z.dim();
  if (k.cols() == 0) return std::nullopt;
  Vec eta;
  if (k.cols() == 1) {
    if (std::abs(k(n, 0)) > tol) return std::nullopt;
    eta = k.col(0);
  } else {
    // Remove the c-component with one Householder-style combination.
    const Vec coeff = k.row(n).transpose();
    Vec comb = Vec::Zero(k.cols());
    if (coeff.norm() <= tol) {
      comb[0] = 1.0;
    } else {
      const Vec u = coeff / coeff.norm();
      Eigen::Index j;
      u.cwiseAbs().minCoeff(&j);
      comb = Vec::Unit(k.cols(), j) - u[j] * u;
    }
    eta = k * comb;
  }
  Vec xi = eta.head(n);
  if (xi.norm() <= tol) return std::nullopt;
  return Vec(xi / xi.norm());
}

StateVector approximate_by_lambda_prime(const StateVector& z, int N, double tol) {
  if (N < 1) throw std::invalid_argument("N must be >= 1");
  const auto xi = spatial_kernel(z, tol);
  if (!xi) throw std::invalid_argument("direction has no kernel element of the form (xi, 0)");
  const double Nd = static_cast<double>(N);
  const double den = Nd * Nd * z.rho + Nd;
  if (std::abs(den) <= tol) throw std::invalid_argument("N^2 rho + N vanishes");
  const Mat stress = z.sigma_plus_p() + sym_outer(*xi, z.v) / den;
  return StateVector::from_stress(z.rho + 1.0 / Nd, z.v, z.m + *xi / (Nd * Nd), stress);
}

StateVector muskat_direction(const StateVector& z) {
  if (!(std::abs(z.rho) < 1.0 - kPoleGuard)) throw DomainError("muskat_direction needs |rho| < 1");
  const Vec vt = (z.m - z.rho * z.v) / (1.0 - z.rho * z.rho);
  const Vec mt = z.v - z.rho * vt;
  return StateVector::from_stress(1.0, vt, mt, sym_outer(mt, vt));
}

ConeCertificate euler_direction(const Vec& v_bar, const Mat& sigma_bar, double lambda) {
  const int n = static_cast<int>(v_bar.size());
  const double vv = v_bar.squaredNorm();
  if (vv == 0.0) throw std::invalid_argument("euler_direction needs v != 0");
  if (n < 2) throw std::invalid_argument("euler_direction needs n >= 2");
  const Mat b = orthogonal_complement(v_bar);
  const Mat compressed = b.transpose() * sigma_bar * b;
  const SymEigen eig = sym_eigen(0.5 * (compressed + compressed.transpose()));
  const double mu = eig.values[0];
  Vec xi = b * eig.vectors.col(0);
  xi /= xi.norm();

  StateVector dir{0.0, v_bar, lambda * v_bar, sigma_bar, -mu};
  Vec eta(n + 1);
  eta.head(n) = xi;
  eta[n] = -v_bar.dot(sigma_bar * xi) / vv;
  ConeCertificate cert = certify(dir, eta);
  return cert;
}

ConeCertificate segment_between_K(const StateVector& z1, const StateVector& z2, const EnergyAtPoint& e,
                                  double tol) {
  const ClassifyTolerance band{tol, 0.0};
  if (classify(z1, e, band).cls != HullClass::in_K || classify(z2, e, band).cls != HullClass::in_K) {
    throw std::invalid_argument("segment_between_K: both endpoints must lie in K");
  }
  if (std::abs(z1.p - z2.p) > tol * std::max(1.0, std::abs(z1.p))) {
    throw std::invalid_argument("segment_between_K: pressures must match");
  }
  const StateVector dz = z2 - z1;
  if (dz.norm() <= tol) throw std::invalid_argument("segment_between_K: z1 == z2");

  const int n = dz.dim();
  Vec xi;
  if (dz.v.norm() > tol) {
    xi = orthogonal_complement(dz.v).col(0);
  } else {
    xi = unit(n, 0);
  }
  Vec eta(n + 1);
  eta.head(n) = xi;
  eta[n] = -z1.v.dot(xi);
  ConeCertificate cert = certify(dz, eta);
  if (cert.residual > kKernelTol * (1.0 + dz.norm())) {
    if (auto svd = in_lambda(dz)) return *svd;
    throw std::domain_error("segment_between_K: z2 - z1 has no kernel element (residual " +
                            std::to_string(cert.residual) + ")");
  }
  return cert;
}

}  // namespace rtmix

#include "rtmix/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace rtmix {

bool is_symmetric(const Mat& s, double rel_tol) {
  if (s.rows() != s.cols()) return false;
  const double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
  return (s - s.transpose()).cwiseAbs().maxCoeff() <= rel_tol * scale;
}

namespace {

SymEigen eigen2(const Mat& s) {
  const double a = s(0, 0), b = 0.5 * (s(0, 1) + s(1, 0)), d = s(1, 1);
  const double mean = 0.5 * (a + d);
  const double half_diff = 0.5 * (a - d);
  const double rad = std::hypot(half_diff, b);

  SymEigen out{Vec(2), Mat(2, 2)};
  out.values << mean - rad, mean + rad;
  if (rad == 0.0) {
    out.vectors.setIdentity();
    return out;
  }
  // eigenvector for the larger eigenvalue, built from the better-conditioned row
  Eigen::Vector2d hi;
  if (half_diff >= 0.0) {
    hi << half_diff + rad, b;
  } else {
    hi << b, rad - half_diff;
  }
  hi.normalize();
  out.vectors.col(1) = hi;
  out.vectors.col(0) << -hi[1], hi[0];
  return out;
}

SymEigen jacobi(const Mat& s_in) {
  const auto n = s_in.rows();
  Mat a = 0.5 * (s_in + s_in.transpose());
  Mat v = Mat::Identity(n, n);

  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (off <= 1e-32 * std::max(1.0, a.squaredNorm())) break;

    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - sn * akq;
          a(k, q) = sn * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - sn * aqk;
          a(q, k) = sn * apk + c * aqk;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - sn * vkq;
          v(k, q) = sn * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](auto i, auto j) { return a(i, i) < a(j, j); });

  SymEigen out{Vec(n), Mat(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    out.vectors.col(k) = v.col(order[k]);
  }
  return out;
}

}  // namespace

SymEigen sym_eigen(const Mat& s) {
  if (s.rows() != s.cols() || s.rows() == 0)
    throw std::invalid_argument("sym_eigen: matrix must be square and non-empty");
  if (s.rows() == 1) return {Vec::Constant(1, s(0, 0)), Mat::Identity(1, 1)};
  if (s.rows() == 2) return eigen2(s);
  return jacobi(s);
}

double lambda_max(const Mat& s) { return sym_eigen(s).max(); }

Mat trace_free_part(const Mat& s) {
  if (!is_symmetric(s))
    throw std::invalid_argument("trace_free_part: matrix is not symmetric");
  const auto n = s.rows();
  return s - (s.trace() / static_cast<double>(n)) * Mat::Identity(n, n);
}

Mat outer(const Vec& a, const Vec& b) { return a * b.transpose(); }

Mat sym_outer(const Vec& a, const Vec& b) {
  return a * b.transpose() + b * a.transpose();
}

Vec unit(int n, int k) {
  Vec e = Vec::Zero(n);
  e[k] = 1.0;
  return e;
}

Mat orthogonal_complement(const Vec& v) {
  const auto n = v.size();
  const Eigen::HouseholderQR<Mat> qr{Mat(v)};
  const Mat q = qr.householderQ() * Mat::Identity(n, n);
  return q.rightCols(n - 1);
}

}  // namespace rtmix

#include "rtmix/state.hpp"

#include <cmath>
#include <sstream>

namespace rtmix {

StateVector::StateVector(double rho_, Vec v_, Vec m_, Mat sigma_, double p_)
    : rho(rho_), v(std::move(v_)), m(std::move(m_)), sigma(std::move(sigma_)), p(p_) {}

StateVector StateVector::zero(int n) {
  return {0.0, Vec::Zero(n), Vec::Zero(n), Mat::Zero(n, n), 0.0};
}

StateVector StateVector::from_stress(double rho, Vec v, Vec m, const Mat& stress) {
  const double p = stress.trace() / static_cast<double>(stress.rows());
  return {rho, std::move(v), std::move(m), trace_free_part(stress), p};
}

Mat StateVector::sigma_plus_p() const {
  return sigma + p * Mat::Identity(dim(), dim());
}

double StateVector::pi_norm() const {
  return std::sqrt(rho * rho + v.squaredNorm() + m.squaredNorm() + sigma.squaredNorm());
}

double StateVector::norm() const { return std::hypot(pi_norm(), p); }

StateVector& StateVector::operator+=(const StateVector& o) {
  rho += o.rho;
  v += o.v;
  m += o.m;
  sigma += o.sigma;
  p += o.p;
  return *this;
}

StateVector& StateVector::operator-=(const StateVector& o) {
  rho -= o.rho;
  v -= o.v;
  m -= o.m;
  sigma -= o.sigma;
  p -= o.p;
  return *this;
}

StateVector& StateVector::operator*=(double s) {
  rho *= s;
  v *= s;
  m *= s;
  sigma *= s;
  p *= s;
  return *this;
}

void validate(const StateVector& z) {
  const auto n = z.v.size();
  if (n < 1 || z.m.size() != n || z.sigma.rows() != n || z.sigma.cols() != n) {
    throw std::invalid_argument("state components have inconsistent dimensions");
  }
  if (!is_symmetric(z.sigma)) throw std::invalid_argument("sigma is not symmetric");
  if (std::abs(z.sigma.trace()) > 1e-12 * std::max(1.0, z.sigma.norm())) {
    throw std::invalid_argument("sigma is not trace-free");
  }
}

std::string to_string(const StateVector& z) {
  std::ostringstream os;
  os.precision(10);
  const Eigen::IOFormat row(Eigen::FullPrecision, Eigen::DontAlignCols, ", ", "; ", "", "", "[", "]");
  os << "rho=" << z.rho << " v=" << z.v.transpose().format(row) << " m=" << z.m.transpose().format(row)
     << " sigma=" << z.sigma.format(row) << " p=" << z.p;
  return os.str();
}

}  // namespace rtmix

#include "rtmix/profile.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rtmix {

namespace {

constexpr double kPi = std::numbers::pi;
// Below this distance to y = 1 the quotient F/(1-f) uses its Taylor series.
constexpr double kSeriesBand = 1e-5;

double sign_pow(int k) { return k % 2 ? -1.0 : 1.0; }

}  // namespace

Profile::Profile(std::vector<double> coeffs) : c_(std::move(coeffs)) {}

double Profile::f(double y) const {
  double s = y;
  for (int k = 1; k <= size(); ++k) s += c_[k - 1] * std::sin(k * kPi * y);
  return s;
}

double Profile::df(double y) const {
  double s = 1.0;
  for (int k = 1; k <= size(); ++k) s += c_[k - 1] * k * kPi * std::cos(k * kPi * y);
  return s;
}

double Profile::d2f(double y) const {
  double s = 0.0;
  for (int k = 1; k <= size(); ++k) s -= c_[k - 1] * std::pow(k * kPi, 2) * std::sin(k * kPi * y);
  return s;
}

double Profile::d3f(double y) const {
  double s = 0.0;
  for (int k = 1; k <= size(); ++k) s -= c_[k - 1] * std::pow(k * kPi, 3) * std::cos(k * kPi * y);
  return s;
}

double Profile::dF_dc(double y, int k) const {
  const double w = k * kPi;
  return y * std::sin(w * y) + (std::cos(w * y) - sign_pow(k)) / w;
}

double Profile::F(double y) const {
  double s = 0.5 * (y * y - 1.0);
  for (int k = 1; k <= size(); ++k) s += c_[k - 1] * dF_dc(y, k);
  return s;
}

double Profile::integral(double y) const {
  double s = 0.5 * (y * y - 1.0);
  for (int k = 1; k <= size(); ++k) {
    const double w = k * kPi;
    s -= c_[k - 1] * (std::cos(w * y) - sign_pow(k)) / w;
  }
  return s;
}

double Profile::moment() const {
  double s = 1.0 / 3.0;
  for (int k = 1; k <= size(); ++k) s -= c_[k - 1] * sign_pow(k) / (k * kPi);
  return s;
}

double Profile::ratio_minus(double y) const {
  const double h = y - 1.0;
  if (std::abs(h) < kSeriesBand) {
    // F(1) = 0 and f(1) = 1; expand numerator and denominator about y = 1
    // using F' = y f'.
    const double f1 = df(1.0), f2 = d2f(1.0), f3 = d3f(1.0);
    const double num = f1 + (f1 + f2) * h / 2.0 + (2.0 * f2 + f3) * h * h / 6.0;
    const double den = -f1 - f2 * h / 2.0 - f3 * h * h / 6.0;
    return num / den;
  }
  return F(y) / (1.0 - f(y));
}

bool Profile::feasible(int grid) const {
  if (!(df(1.0) > 0.0) || !(df(-1.0) > 0.0)) return false;
  for (int i = 1; i < grid; ++i) {
    const double y = -1.0 + 2.0 * i / grid;
    if (!(std::abs(f(y)) < 1.0)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

GrowthRate GrowthRate::quadratic(double coef) {
  if (!(coef > 0.0)) throw std::invalid_argument("quadratic growth needs a positive coefficient");
  GrowthRate g;
  g.kind_ = Kind::quadratic;
  g.c_ = {coef};
  return g;
}

GrowthRate GrowthRate::polynomial(std::vector<double> coeffs) {
  if (coeffs.empty()) throw std::invalid_argument("polynomial growth needs coefficients");
  GrowthRate g;
  g.kind_ = Kind::polynomial;
  g.c_ = std::move(coeffs);
  return g;
}

GrowthRate GrowthRate::tabulated(std::vector<double> t, std::vector<double> a, std::vector<double> adot) {
  if (t.size() < 2 || a.size() != t.size() || adot.size() != t.size()) {
    throw std::invalid_argument("tabulated growth needs matching samples (>= 2)");
  }
  if (t.front() != 0.0 || a.front() != 0.0) throw std::invalid_argument("tabulated growth must start at a(0) = 0");
  if (!std::is_sorted(t.begin(), t.end()) || std::adjacent_find(t.begin(), t.end()) != t.end()) {
    throw std::invalid_argument("tabulated times must be strictly increasing");
  }
  GrowthRate g;
  g.kind_ = Kind::tabulated;
  g.t_ = std::move(t);
  g.a_ = std::move(a);
  g.ad_ = std::move(adot);
  return g;
}

namespace {

// Cubic Hermite value and derivatives on one interval.
struct Hermite {
  double v, d1, d2;
};

Hermite hermite(double t0, double t1, double a0, double a1, double d0, double d1, double t) {
  const double h = t1 - t0, s = (t - t0) / h;
  const double s2 = s * s, s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s, h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
  const double v = h00 * a0 + h10 * h * d0 + h01 * a1 + h11 * h * d1;
  const double dv = ((6 * s2 - 6 * s) * a0 + (3 * s2 - 4 * s + 1) * h * d0 + (-6 * s2 + 6 * s) * a1 +
                     (3 * s2 - 2 * s) * h * d1) / h;
  const double ddv = ((12 * s - 6) * a0 + (6 * s - 4) * h * d0 + (-12 * s + 6) * a1 + (6 * s - 2) * h * d1) /
                     (h * h);
  return {v, dv, ddv};
}

}  // namespace

double GrowthRate::a(double t) const {
  switch (kind_) {
    case Kind::quadratic: return c_[0] * t * t;
    case Kind::polynomial: {
      double s = 0.0;
      for (std::size_t k = c_.size(); k-- > 0;) s = (s + c_[k]) * t;
      return s;
    }
    case Kind::tabulated: break;
  }
  const auto it = std::upper_bound(t_.begin(), t_.end(), t);
  std::size_t i = it == t_.begin() ? 0 : static_cast<std::size_t>(it - t_.begin()) - 1;
  i = std::min(i, t_.size() - 2);
  return hermite(t_[i], t_[i + 1], a_[i], a_[i + 1], ad_[i], ad_[i + 1], t).v;
}

double GrowthRate::adot(double t) const {
  switch (kind_) {
    case Kind::quadratic: return 2.0 * c_[0] * t;
    case Kind::polynomial: {
      double s = 0.0;
      for (std::size_t k = c_.size(); k-- > 0;) s = s * t + (k + 1.0) * c_[k];
      return s;
    }
    case Kind::tabulated: break;
  }
  const auto it = std::upper_bound(t_.begin(), t_.end(), t);
  std::size_t i = it == t_.begin() ? 0 : static_cast<std::size_t>(it - t_.begin()) - 1;
  i = std::min(i, t_.size() - 2);
  return hermite(t_[i], t_[i + 1], a_[i], a_[i + 1], ad_[i], ad_[i + 1], t).d1;
}

double GrowthRate::addot(double t) const {
  switch (kind_) {
    case Kind::quadratic: return 2.0 * c_[0];
    case Kind::polynomial: {
      double s = 0.0;
      for (std::size_t k = c_.size(); k-- > 1;) s = s * t + (k + 1.0) * k * c_[k];
      return s;
    }
    case Kind::tabulated: break;
  }
  const auto it = std::upper_bound(t_.begin(), t_.end(), t);
  std::size_t i = it == t_.begin() ? 0 : static_cast<std::size_t>(it - t_.begin()) - 1;
  i = std::min(i, t_.size() - 2);
  return hermite(t_[i], t_[i + 1], a_[i], a_[i + 1], ad_[i], ad_[i + 1], t).d2;
}

double GrowthRate::time_to_reach(double level, double t_max) const {
  if (a(t_max) < level) return -1.0;
  double lo = 0.0, hi = t_max;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * t_max; ++it) {
    const double mid = 0.5 * (lo + hi);
    (a(mid) < level ? lo : hi) = mid;
  }
  return hi;
}

}  // namespace rtmix

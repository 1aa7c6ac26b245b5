#pragma once

#include <vector>

namespace rtmix {

/// Odd profile f(y) = y + sum_k c_k sin(k pi y) on [-1, 1]; f(+-1) = +-1 for
/// every coefficient vector.
class Profile {
 public:
  Profile() = default;
  explicit Profile(std::vector<double> coeffs);

  static Profile identity() { return Profile{}; }

  const std::vector<double>& coeffs() const { return c_; }
  int size() const { return static_cast<int>(c_.size()); }

  double f(double y) const;
  double df(double y) const;
  double d2f(double y) const;
  double d3f(double y) const;

  /// F(y) = int_{-1}^y s f'(s) ds in closed form; F is even and F(+-1) = 0.
  double F(double y) const;
  /// Partial derivative of F with respect to c_k (k is 1-based).
  double dF_dc(double y, int k) const;
  /// int_{-1}^y f(s) ds.
  double integral(double y) const;
  /// int_0^1 y f(y) dy.
  double moment() const;

  /// F / (1 - f), continuous up to y = 1 (limit -1 there).
  double ratio_minus(double y) const;
  /// F / (1 + f), continuous down to y = -1.
  double ratio_plus(double y) const { return ratio_minus(-y); }
  /// F^2 / (1 - f^2).
  double F2_over_1mf2(double y) const { return ratio_minus(y) * ratio_plus(y); }

  /// f'(+-1) > 0 and |f| < 1 on `grid` interior points of (-1, 1).
  bool feasible(int grid = 10000) const;

 private:
  std::vector<double> c_;
};

/// a(t) with a(0) = 0, a(t) > 0 for t > 0.
class GrowthRate {
 public:
  enum class Kind { quadratic, polynomial, tabulated };

  /// a(t) = coef t^2.
  static GrowthRate quadratic(double coef);
  /// a(t) = sum_k coeffs[k] t^(k+1).
  static GrowthRate polynomial(std::vector<double> coeffs);
  /// Piecewise cubic Hermite through (t_i, a_i, adot_i); t_0 must be 0.
  static GrowthRate tabulated(std::vector<double> t, std::vector<double> a, std::vector<double> adot);

  Kind kind() const { return kind_; }
  double a(double t) const;
  double adot(double t) const;
  double addot(double t) const;
  /// First time with a(t) = level, searched on [0, t_max]; negative if none.
  double time_to_reach(double level, double t_max) const;

 private:
  Kind kind_ = Kind::quadratic;
  std::vector<double> c_;
  std::vector<double> t_, a_, ad_;
};

}  // namespace rtmix

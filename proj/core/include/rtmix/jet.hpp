#pragma once

#include <array>
#include <memory>
#include <vector>

namespace rtmix {

using MultiIndex = std::array<int, 4>;

/// Truncated multivariate Taylor polynomials in up to 4 variables, total
/// degree up to 6. Coefficients are stored per monomial; `derivative(alpha)`
/// returns alpha! * coeff_alpha, i.e. the partial derivative at the base point.
class JetSpace {
 public:
  JetSpace(int dims, int order);

  int dims() const { return dims_; }
  int order() const { return order_; }
  int size() const { return static_cast<int>(exps_.size()); }
  int index(const MultiIndex& alpha) const;  // -1 when |alpha| > order
  const MultiIndex& exponent(int i) const { return exps_[static_cast<std::size_t>(i)]; }
  double factorial(int i) const { return fact_[static_cast<std::size_t>(i)]; }

  struct Product {
    int a, b, out;
  };
  const std::vector<Product>& products() const { return products_; }

  static std::shared_ptr<const JetSpace> get(int dims, int order);

 private:
  int dims_;
  int order_;
  std::vector<MultiIndex> exps_;
  std::vector<int> lookup_;
  std::vector<double> fact_;
  std::vector<Product> products_;
};

class Jet {
 public:
  explicit Jet(std::shared_ptr<const JetSpace> space);

  static Jet constant(std::shared_ptr<const JetSpace> space, double value);
  /// value + sum_k grad[k] dy_k
  static Jet affine(std::shared_ptr<const JetSpace> space, double value, const std::vector<double>& grad);

  double value() const { return c_[0]; }
  double derivative(const MultiIndex& alpha) const;
  const std::shared_ptr<const JetSpace>& space() const { return space_; }

  Jet& operator+=(const Jet& o);
  Jet& operator*=(double s);
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator+(Jet a, const Jet& b) { return a += b; }

  /// sum_k taylor[k] (u - u(0))^k for the jet u; taylor[k] = f^(k)(u0)/k!.
  static Jet compose(const std::vector<double>& taylor, const Jet& u);

  std::vector<double>& coeffs() { return c_; }
  const std::vector<double>& coeffs() const { return c_; }

 private:
  std::shared_ptr<const JetSpace> space_;
  std::vector<double> c_;
};

}  // namespace rtmix

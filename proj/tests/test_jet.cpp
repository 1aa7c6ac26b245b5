#include <cmath>
#include <numbers>

#include "doctest.h"
#include "rtmix/jet.hpp"

using namespace rtmix;

TEST_CASE("jet space enumerates monomials up to the order") {
  const auto sp = JetSpace::get(2, 3);
  CHECK(sp->size() == 10);  // C(2+3, 3)
  CHECK(sp->index({4, 0, 0, 0}) == -1);
  CHECK(sp->index({0, 0, 0, 0}) == 0);
}

TEST_CASE("product of affine jets gives the polynomial's derivatives") {
  const auto sp = JetSpace::get(2, 4);
  // u = 1 + 2x + 3y, w = -1 + x - y at the origin; (u w) has u w, d/dx = 2w + u, ...
  const Jet u = Jet::affine(sp, 1.0, {2.0, 3.0});
  const Jet w = Jet::affine(sp, -1.0, {1.0, -1.0});
  const Jet p = u * w;
  CHECK(p.value() == doctest::Approx(-1.0));
  CHECK(p.derivative({1, 0, 0, 0}) == doctest::Approx(2.0 * -1.0 + 1.0 * 1.0));
  CHECK(p.derivative({0, 1, 0, 0}) == doctest::Approx(3.0 * -1.0 + 1.0 * -1.0));
  CHECK(p.derivative({1, 1, 0, 0}) == doctest::Approx(2.0 * -1.0 + 3.0 * 1.0));
  CHECK(p.derivative({2, 0, 0, 0}) == doctest::Approx(2.0 * 2.0 * 1.0));
}

TEST_CASE("compose reproduces derivatives of sin along an affine argument") {
  const auto sp = JetSpace::get(2, 6);
  const double x0 = 0.3, y0 = -0.2, a = 1.7, b = -0.6;
  const double u0 = a * x0 + b * y0;
  const Jet u = Jet::affine(sp, u0, {a, b});
  std::vector<double> taylor(7);
  double fact = 1.0;
  for (int k = 0; k <= 6; ++k) {
    if (k > 0) fact *= k;
    const double dk = std::sin(u0 + k * std::numbers::pi / 2.0);
    taylor[static_cast<std::size_t>(k)] = dk / fact;
  }
  const Jet s = Jet::compose(taylor, u);
  for (int i = 0; i <= 3; ++i) {
    for (int j = 0; i + j <= 6 && j <= 3; ++j) {
      const double want = std::pow(a, i) * std::pow(b, j) * std::sin(u0 + (i + j) * std::numbers::pi / 2.0);
      CHECK(s.derivative({i, j, 0, 0}) == doctest::Approx(want).epsilon(1e-12));
    }
  }
}

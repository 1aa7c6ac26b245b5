#include <cmath>
#include <numbers>

#include "doctest.h"
#include "rtmix/quadrature.hpp"

using namespace rtmix;

TEST_CASE("Gauss-Legendre nodes and weights") {
  for (int order : {2, 5, 16, 64}) {
    const GaussRule& r = gauss_legendre(order);
    REQUIRE(static_cast<int>(r.nodes.size()) == order);
    double w = 0.0;
    for (double x : r.weights) w += x;
    CHECK(w == doctest::Approx(2.0).epsilon(1e-14));
    for (int i = 1; i < order; ++i) CHECK(r.nodes[i] > r.nodes[i - 1]);
  }
  // Exact for polynomials of degree 2n - 1.
  const GaussRule& r = gauss_legendre(4);
  double s = 0.0;
  for (int i = 0; i < 4; ++i) s += r.weights[i] * std::pow(r.nodes[i], 6);
  CHECK(s == doctest::Approx(2.0 / 7.0).epsilon(1e-14));
}

TEST_CASE("composite rules integrate smooth and kinked functions") {
  CHECK(integrate_gl([](double x) { return std::exp(x); }, 0.0, 1.0) ==
        doctest::Approx(std::numbers::e - 1.0).epsilon(1e-14));
  const auto kink = [](double x) { return std::abs(x - 0.3); };
  CHECK(integrate_gl_breaks(kink, {0.0, 0.3, 1.0}) == doctest::Approx(0.5 * (0.09 + 0.49)).epsilon(1e-14));
}

TEST_CASE("adaptive Gauss-Kronrod handles endpoint singular behaviour") {
  const AdaptiveResult r = integrate_adaptive([](double x) { return std::sqrt(x); }, 0.0, 1.0, 1e-12, 1e-12);
  CHECK(r.converged);
  CHECK(std::abs(r.value - 2.0 / 3.0) < 1e-11);
  const AdaptiveResult peak =
      integrate_adaptive([](double x) { return 1.0 / (1e-4 + x * x); }, -1.0, 1.0, 1e-10, 1e-12);
  CHECK(peak.value == doctest::Approx(2.0 * 100.0 * std::atan(100.0)).epsilon(1e-11));
}

TEST_CASE("Halton points lie in the unit cube and are deterministic") {
  const auto p = halton(1, 3);
  CHECK(p[0] == doctest::Approx(0.5));
  CHECK(p[1] == doctest::Approx(1.0 / 3.0));
  CHECK(p[2] == doctest::Approx(0.2));
  for (long k = 1; k < 500; ++k)
    for (double x : halton(k, 8)) CHECK((x >= 0.0 && x < 1.0));
}

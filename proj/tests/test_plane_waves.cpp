#include <cmath>

#include "doctest.h"
#include "rtmix/cutoff.hpp"
#include "rtmix/plane_waves.hpp"
#include "rtmix/verify.hpp"

using namespace rtmix;

TEST_CASE("plateau cutoff values and Taylor coefficients") {
  const PlateauCutoff phi(0.2);
  CHECK(phi(0.0) == 1.0);
  CHECK(phi(0.8 * 0.8) == doctest::Approx(1.0));
  CHECK(phi(1.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(phi(1.5) == 0.0);
  double prev = 1.0;
  for (double u = 0.6; u < 1.0; u += 0.01) {
    CHECK(phi(u) <= prev + 1e-15);
    prev = phi(u);
  }
  const double u = 0.85, h = 1e-5;
  const auto t = phi.taylor(u, 3);
  CHECK(t[0] == doctest::Approx(phi(u)));
  CHECK(t[1] == doctest::Approx((phi(u + h) - phi(u - h)) / (2 * h)).epsilon(1e-7));
  CHECK(2.0 * t[2] == doctest::Approx((phi(u + h) - 2 * phi(u) + phi(u - h)) / (h * h)).epsilon(1e-4));
  CHECK_THROWS(PlateauCutoff(0.0));
}

TEST_CASE("stress decompositions orthogonal to xi") {
  Vec xi(2);
  xi << 0.6, 0.8;
  Vec perp(2);
  perp << -0.8, 0.6;
  CHECK(euler2d_coefficient(1.3 * outer(perp, perp), xi) == doctest::Approx(1.3));

  Vec x3(3), a(3), b(3);
  x3 << 0.0, 0.0, 1.0;
  a << 1.0, 0.0, 0.0;
  b << 0.0, 1.0, 0.0;
  const Mat S = 1.1 * outer(a, a) - 0.4 * outer(b, b) + 0.7 * sym_outer(a, b);
  double res = 1.0;
  const auto k = euler3d_coefficients(S, x3, &res);
  CHECK(res < 1e-12);
  // Any decomposition in a valid pair must rebuild S.
  CHECK(std::abs(k[0]) + std::abs(k[1]) + std::abs(k[2]) > 0.0);
}

TEST_CASE("plane waves solve the linear system exactly") {
  struct Case {
    WaveKind kind;
    int n;
  };
  for (const Case c : {Case{WaveKind::density, 2}, Case{WaveKind::density, 3}, Case{WaveKind::euler2d, 2},
                       Case{WaveKind::euler3d, 3}}) {
    const WaveField w = wave_fixture(c.kind, c.n, 10);
    CHECK(w.kind() == c.kind);
    CHECK(w.dim() == c.n);
    const LinearSystemReport r = verify_linear_system(w, 2e-3, 16);
    CHECK(r.exact_max < 1e-9);
    CHECK(r.order == doctest::Approx(2.0).epsilon(0.1));
  }
}

TEST_CASE("waves vanish outside the support and stay near the segment") {
  const WaveField w = wave_fixture(WaveKind::density, 2, 40);
  Vec x(2);
  x << 0.9, 0.9;
  CHECK_FALSE(w.in_support(x, 0.0));
  CHECK(w.sample(x, 0.0).norm() == 0.0);
  WaveOptions wide;
  wide.cutoff_eps = 0.9;
  WavePropertyOptions po;
  po.segment_samples = 2000;
  po.mass_samples = 2000;
  const WavePropertyReport r20 = verify_wave_properties(wave_fixture(WaveKind::density, 2, 20, wide), po);
  const WavePropertyReport r80 = verify_wave_properties(wave_fixture(WaveKind::density, 2, 80, wide), po);
  CHECK(r80.segment_distance < 0.5 * r20.segment_distance);
  CHECK(r80.weak_proxy < 0.5 * r20.weak_proxy);
  CHECK(r80.mass_ratio > 0.0);
}

TEST_CASE("log-log slope of an exact power law") {
  const std::vector<double> N{10, 20, 40, 80};
  std::vector<double> v;
  for (double n : N) v.push_back(3.0 / n);
  CHECK(loglog_slope(N, v) == doctest::Approx(-1.0));
  CHECK_THROWS_AS(loglog_slope({1.0}, {1.0}), std::invalid_argument);
}

TEST_CASE("segment distance") {
  StateVector end = StateVector::zero(2);
  end.rho = 1.0;
  StateVector z = StateVector::zero(2);
  z.rho = 0.5;
  z.p = 0.3;
  CHECK(segment_distance(z, end) == doctest::Approx(0.3));
  z.rho = 2.0;
  CHECK(segment_distance(z, end) == doctest::Approx(std::hypot(1.0, 0.3)));
}

TEST_CASE("probe lattice is deterministic and inside the unit ball") {
  const auto a = wave_probes(3, 50), b = wave_probes(3, 50);
  REQUIRE(a.size() == 50);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK((a[i] - b[i]).norm() == 0.0);
    CHECK(a[i].norm() <= 0.95 + 1e-12);
  }
}

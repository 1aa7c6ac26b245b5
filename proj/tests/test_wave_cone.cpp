#include <cmath>

#include "doctest.h"
#include "rtmix/verify.hpp"
#include "rtmix/wave_cone.hpp"

using namespace rtmix;

TEST_CASE("M_Lambda block layout") {
  StateVector z = StateVector::zero(2);
  z.rho = 0.3;
  z.v << 1.0, 2.0;
  z.m << -1.0, 0.5;
  z.sigma << 0.2, 0.1, 0.1, -0.2;
  z.p = 1.0;
  const Mat M = m_lambda(z);
  REQUIRE(M.rows() == 4);
  REQUIRE(M.cols() == 3);
  CHECK(M(0, 0) == doctest::Approx(1.2));
  CHECK(M(0, 2) == doctest::Approx(1.0));
  CHECK(M(2, 1) == doctest::Approx(2.0));
  CHECK(M(2, 2) == 0.0);
  CHECK(M(3, 0) == doctest::Approx(-1.0));
  CHECK(M(3, 2) == doctest::Approx(0.3));
}

TEST_CASE("cone membership of hand-built directions") {
  // (xi, 0) with xi = e1 is in the kernel when v1 = m1 = 0 and the first
  // column of sigma + p id vanishes.
  StateVector z = StateVector::zero(2);
  z.v << 0.0, 1.0;
  z.m << 0.0, -2.0;
  z.sigma << -0.5, 0.0, 0.0, 0.5;
  z.p = 0.5;
  const auto sk = spatial_kernel(z);
  REQUIRE(sk.has_value());
  CHECK(std::abs(std::abs((*sk)(0)) - 1.0) < 1e-12);
  const auto c = in_lambda(z);
  REQUIRE(c.has_value());
  CHECK(c->residual < 1e-12);
  CHECK_FALSE(in_lambda_prime(z).has_value());

  StateVector generic = StateVector::zero(2);
  generic.rho = 0.4;
  generic.v << 1.0, 0.3;
  generic.m << 0.2, 1.0;
  generic.p = 2.0;
  CHECK_FALSE(in_lambda(generic).has_value());
}

TEST_CASE("Muskat direction keeps T and the deviator of M") {
  Rng rng(21);
  for (int i = 0; i < 300; ++i) {
    const StateVector z = random_state(rng, 2 + i % 2, 0.8, 0.5);
    const StateVector d = muskat_direction(z);
    CHECK(in_lambda(d).has_value());
    const StateVector w = z + 0.1 * d;
    for (int s : {1, -1}) CHECK(T_pm(w, s) == doctest::Approx(T_pm(z, s)).epsilon(1e-10));
    CHECK((trace_free_part(matrix_M(w)) - trace_free_part(matrix_M(z))).norm() < 1e-10 * (1 + matrix_M(z).norm()));
  }
  StateVector pole = StateVector::zero(2);
  pole.rho = 1.0;
  CHECK_THROWS_AS(muskat_direction(pole), DomainError);
}

TEST_CASE("Euler directions carry a kernel element") {
  Rng rng(22);
  for (int i = 0; i < 100; ++i) {
    const int n = 2 + i % 2;
    const Vec vb = random_state(rng, n, 0.0).v;
    for (double lambda : {1.0, -1.0}) {
      const ConeCertificate c = euler_direction(vb, random_trace_free(rng, n, 0.5), lambda);
      CHECK(c.residual < 1e-10 * (1.0 + c.direction.norm()));
      CHECK(c.direction.rho == 0.0);
      CHECK((c.direction.m - lambda * c.direction.v).norm() < 1e-14);
    }
  }
}

TEST_CASE("segments between K points") {
  Rng rng(23);
  for (int i = 0; i < 200; ++i) {
    const int n = 2 + i % 2;
    EnergyAtPoint e = random_energy(rng);
    KPair same = random_K_pair(rng, n, e);
    same.z2 = make_K_point(static_cast<int>(same.z1.rho), random_state(rng, n, 0.0).v, e, same.z1.p);
    const ConeCertificate c = segment_between_K(same.z1, same.z2, e);
    CHECK(c.residual < 1e-9);

    e.e1 = 0.0;
    const KPair opp = random_K_pair(rng, n, e, 1);
    CHECK_NOTHROW(segment_between_K(opp.z1, opp.z2, e));
  }
}

TEST_CASE("opposite-sign K points with e[+1] != e[-1] have no kernel") {
  // n = 2: xi must be orthogonal to v2 - v1 and the density row then forces
  // m1.xi = -rho1 c, which contradicts v1.xi + c = 0 once |v1| != |v2|.
  Vec d1(2), d2(2);
  d1 << 1.0, 0.2;
  d2 << -0.3, 1.0;
  const EnergyAtPoint e{1.0, 0.3};
  const StateVector z1 = make_K_point(-1, d1, e), z2 = make_K_point(1, d2, e);
  CHECK_THROWS_AS(segment_between_K(z1, z2, e), std::domain_error);
  CHECK_FALSE(in_lambda(z2 - z1).has_value());
}

TEST_CASE("segment_between_K input checks") {
  Vec d(2);
  d << 1.0, 0.0;
  const EnergyAtPoint e{1.0, 0.0};
  const StateVector k = make_K_point(1, d, e, 0.0);
  CHECK_THROWS_AS(segment_between_K(k, k, e), std::invalid_argument);
  StateVector q = make_K_point(-1, d, e, 1.0);
  CHECK_THROWS_AS(segment_between_K(k, q, e), std::invalid_argument);
  StateVector off = StateVector::zero(2);
  CHECK_THROWS_AS(segment_between_K(k, off, e), std::invalid_argument);
}

TEST_CASE("perturbation directions are bilateral in the closure") {
  Rng rng(24);
  for (int i = 0; i < 300; ++i) {
    EnergyAtPoint e;
    const StateVector z = random_closure_state(rng, 2 + i % 2, static_cast<ClosureKind>(i % 3), e);
    const PerturbationResult r = perturbation_direction(z, e);
    CHECK(r.pi_norm > 0.0);
    CHECK(r.branch != PerturbationBranch::none);
    CHECK(classify(z + r.direction, e).in_closure());
    CHECK(classify(z - r.direction, e).in_closure());
    CHECK(in_lambda(r.direction).has_value());
  }
}

TEST_CASE("Lambda-prime approximation converges like 1/N") {
  StateVector z = StateVector::zero(2);
  z.rho = 0.4;
  z.v << 0.0, 1.0;
  z.m << 0.0, 0.7;
  z.sigma << -0.75, 0.0, 0.0, 0.75;
  z.p = 0.75;
  double prev = 0.0;
  for (int N : {10, 100, 1000}) {
    const StateVector zN = approximate_by_lambda_prime(z, N);
    CHECK(in_lambda_prime(zN).has_value());
    const double d = (zN - z).norm();
    if (prev > 0.0) CHECK(d == doctest::Approx(prev / 10.0).epsilon(0.05));
    prev = d;
  }
  StateVector generic = z;
  generic.p = 3.0;
  CHECK_THROWS_AS(approximate_by_lambda_prime(generic, 10), std::invalid_argument);
}

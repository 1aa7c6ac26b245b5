#include <cmath>

#include "doctest.h"
#include "rtmix/verify.hpp"

using namespace rtmix;

TEST_CASE("random fixtures are reproducible and well formed") {
  Rng a(42), b(42);
  const StateVector za = random_state(a, 3, 0.5), zb = random_state(b, 3, 0.5);
  CHECK((za - zb).norm() == 0.0);
  CHECK(std::abs(za.rho) <= 0.5);
  CHECK_NOTHROW(validate(za));
  CHECK(std::abs(random_trace_free(a, 3, 1.0).trace()) < 1e-14);
  for (int i = 0; i < 50; ++i) {
    const EnergyAtPoint e = random_energy(a);
    CHECK(e(1.0) > 0.0);
    CHECK(e(-1.0) > 0.0);
  }
}

TEST_CASE("K pairs and closure states classify as requested") {
  Rng rng(7);
  for (int i = 0; i < 100; ++i) {
    const int n = 2 + i % 2;
    const KPair kp = random_K_pair(rng, n, random_energy(rng));
    CHECK(classify(kp.z1, kp.e).cls == HullClass::in_K);
    CHECK(classify(kp.z2, kp.e).cls == HullClass::in_K);
    CHECK(kp.z1.p == kp.z2.p);
    const KPair forced = random_K_pair(rng, n, random_energy(rng), 1);
    CHECK(forced.z1.rho == -1.0);
    CHECK(forced.z2.rho == 1.0);

    EnergyAtPoint e;
    CHECK(classify(random_closure_state(rng, n, ClosureKind::interior, e), e).cls == HullClass::interior_U);
    CHECK(classify(random_closure_state(rng, n, ClosureKind::boundary_U0, e), e).cls == HullClass::closure_U0);
    const HullClass kp_cls = classify(random_closure_state(rng, n, ClosureKind::k_prime, e), e).cls;
    CHECK((kp_cls == HullClass::K_plus_prime || kp_cls == HullClass::K_minus_prime));
  }
}

TEST_CASE("hull and subsolution suites pass with the default seed") {
  for (const char* suite : {"hull", "subsolution"}) {
    const VerifyReport r = run_suite(suite);
    CHECK(r.passed());
    CHECK_FALSE(r.checks.empty());
    for (const CheckResult& c : r.checks) {
      INFO(c.name << " value " << c.value << " tol " << c.tolerance);
      CHECK(c.passed);
    }
  }
}

TEST_CASE("injected tolerance fails the named check only") {
  VerifyOptions opt;
  opt.inject_failure = "muskat_invariance";
  const VerifyReport r = run_suite("hull", opt);
  CHECK_FALSE(r.passed());
  for (const CheckResult& c : r.checks) CHECK(c.passed == (c.name != "muskat_invariance"));
}

TEST_CASE("suite names") {
  CHECK(suite_names().size() == 4);
  CHECK_THROWS_AS(run_suite("nope"), std::invalid_argument);
}

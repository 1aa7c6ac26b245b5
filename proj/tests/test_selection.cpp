#include <cmath>
#include <numbers>

#include "doctest.h"
#include "rtmix/selection.hpp"

using namespace rtmix;

TEST_CASE("J_tilde gradient matches central differences") {
  const std::vector<double> x{0.05, -0.02, 0.01, 0.7};
  std::vector<double> g;
  const double v = J_tilde_with_gradient(x, 1.0, &g);
  CHECK(v == doctest::Approx(J_tilde(Profile({0.05, -0.02, 0.01}), 0.7, 1.0)));
  REQUIRE(g.size() == x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::vector<double> xp = x, xm = x;
    const double h = 1e-6;
    xp[i] += h;
    xm[i] -= h;
    const double fd = (J_tilde_with_gradient(xp, 1.0, nullptr) - J_tilde_with_gradient(xm, 1.0, nullptr)) / (2 * h);
    CHECK(g[i] == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("I gradients: d I2 / d c_k = (-1)^k / (k pi)") {
  const Profile f({0.03, 0.01});
  std::vector<double> d1, d2;
  I_gradients(f, d1, d2);
  REQUIRE(d2.size() == 2);
  CHECK(d2[0] == doctest::Approx(-1.0 / std::numbers::pi));
  CHECK(d2[1] == doctest::Approx(1.0 / (2.0 * std::numbers::pi)));
  const double h = 1e-6;
  const double fd = (I1_I2(Profile({0.03 + h, 0.01})).I1 - I1_I2(Profile({0.03 - h, 0.01})).I1) / (2 * h);
  CHECK(d1[0] == doctest::Approx(fd).epsilon(1e-6));
}

TEST_CASE("balance epsilon of the identity is 2/(3n)") {
  for (int n : {2, 3}) {
    double gap = 1.0;
    CHECK(balance_epsilon(Profile::identity(), 2.0 / 3.0, 1.0, n, &gap) == doctest::Approx(2.0 / (3.0 * n)));
    CHECK(gap < 1e-10);
  }
}

TEST_CASE("single-mode basis recovers the selected triple") {
  SelectionOptions so;
  so.basis_size = 1;
  so.restarts = 3;
  const SelectionResult r = minimize(so);
  CHECK(std::abs(r.f_star.coeffs()[0]) < 1e-6);
  CHECK(r.c_star == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
  CHECK(r.J4_star == doctest::Approx(-1.0 / 81.0).epsilon(1e-8));
  CHECK(r.epsilon_star == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
  CHECK(r.restarts_run == 3);
}

TEST_CASE("minimizer scales with gA and is deterministic") {
  SelectionOptions so;
  so.basis_size = 2;
  so.restarts = 4;
  so.gA = 2.0 * 0.5 * 0.8;
  const double gA = so.gA;
  const SelectionResult a = minimize(so), b = minimize(so);
  CHECK(a.c_star == doctest::Approx(2.0 * gA / 3.0).epsilon(1e-6));
  CHECK(a.J4_star == doctest::Approx(-gA * gA * gA / 81.0).epsilon(1e-8));
  CHECK(a.c_star == b.c_star);
  CHECK(a.J4_star == b.J4_star);
  CHECK(a.best_restart == b.best_restart);
}

TEST_CASE("invalid selection options") {
  SelectionOptions so;
  so.basis_size = 0;
  CHECK_THROWS_AS(minimize(so), std::invalid_argument);
  so.basis_size = 2;
  so.restarts = 0;
  CHECK_THROWS_AS(minimize(so), std::invalid_argument);
}

TEST_CASE("no feasible probe beats the minimum") {
  SelectionOptions so;
  so.basis_size = 2;
  so.restarts = 2;
  const SelectionResult r = minimize(so);
  const UniquenessReport u = audit_uniqueness(r, 500, 3, 1.0, 7);
  CHECK(u.probes == 500);
  CHECK(u.violations == 0);
  CHECK(u.worst_gap >= -1e-12);
  CHECK(u.local_growth_order == doctest::Approx(2.0).epsilon(0.2));
}

TEST_CASE("critical points of J_hat on the identity line") {
  const CriticalPointReport c = critical_point_audit();
  REQUIRE(c.lambdas.size() == 2);
  CHECK(c.lambdas[0] == doctest::Approx(-2.0));
  CHECK(c.lambdas[1] == doctest::Approx(1.0));
  for (double g : c.gradient_norms) CHECK(g < 1e-10);
  CHECK(c.gradient_norm_2id > 1e-3);
}

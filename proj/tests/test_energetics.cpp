#include <cmath>
#include <numbers>

#include "doctest.h"
#include "rtmix/energetics.hpp"
#include "rtmix/state.hpp"

using namespace rtmix;

namespace {

double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
  const double h = (b - a) / panels;
  double s = f(a) + f(b);
  for (int i = 1; i < panels; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

}  // namespace

TEST_CASE("energy law scales as (gA)^3 t^4 / 81") {
  PhysicalParams p;
  p.g = 2.0;
  p.A = 0.25;
  p.L = 3.0;
  const double gA = p.gA();
  const GrowthRate a = GrowthRate::quadratic(gA / 3.0);
  for (double t : {0.5, 1.5, std::sqrt(3.0 * p.L / gA)}) {
    const double want = -std::pow(gA, 3) * std::pow(t, 4) / 81.0;
    CHECK(energy_deficit(Profile::identity(), a, 1.0 / 3.0, t, p) == doctest::Approx(want).epsilon(1e-10));
    CHECK(dissipation_ratio(Profile::identity(), a, 1.0 / 3.0, t, p) == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
  }
  CHECK(total_energy(Profile::identity(), a, 1.0 / 3.0, 0.0, p) == doctest::Approx(gA * p.L * p.L));
}

TEST_CASE("G-form deficit agrees with the field quadrature for a perturbed profile") {
  PhysicalParams p;
  const Profile f({0.05, -0.02});
  const GrowthRate a = GrowthRate::polynomial({0.0, 0.4, 0.05});
  const double E0 = total_energy_from_field(f, a, 0.25, 0.0, p);
  for (double t : {0.4, 0.9, 1.3}) {
    const double direct = total_energy_from_field(f, a, 0.25, t, p) - E0;
    CHECK(energy_deficit(f, a, 0.25, t, p) == doctest::Approx(direct).epsilon(1e-8));
  }
}

TEST_CASE("released energy for the identity is gA a^2 / 3") {
  PhysicalParams p;
  const GrowthRate a = GrowthRate::quadratic(1.0 / 3.0);
  CHECK(released_energy(Profile::identity(), a, 1.0, p) == doctest::Approx(1.0 / 27.0));
  CHECK_THROWS_AS(dissipation_ratio(Profile::identity(), a, 1.0 / 3.0, 0.0, p), DomainError);
}

TEST_CASE("I values against direct quadrature") {
  const IPair id = I1_I2(Profile::identity());
  CHECK(id.I1 == doctest::Approx(1.0 / 6.0).epsilon(1e-13));
  CHECK(id.I2 == doctest::Approx(1.0 / 6.0).epsilon(1e-13));
  const Profile f({0.1, 0.03, -0.02});
  const IPair I = I1_I2(f);
  const double i1 = simpson([&](double y) {
    const double F = f.F(y), r = f.f(y);
    return y >= 1.0 ? 0.0 : F * F / (1.0 - r * r);
  }, 0.0, 1.0, 20000);
  CHECK(I.I1 == doctest::Approx(i1).epsilon(1e-8));
  CHECK(I.I2 == doctest::Approx(I2_via_F(f)).epsilon(1e-12));
  // I2 = 1/2 - int_0^1 y f; sin(k pi y) contributes (-1)^(k+1) / (k pi).
  double want = 0.5 - 1.0 / 3.0;
  for (int k = 1; k <= 3; ++k) want -= f.coeffs()[k - 1] * std::pow(-1.0, k + 1) / (k * std::numbers::pi);
  CHECK(I.I2 == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("small-time coefficients of the selected triple") {
  PhysicalParams p;
  const GrowthRate a = GrowthRate::quadratic(1.0 / 3.0);
  const JkResult j4 = J_k(Profile::identity(), a, 1.0 / 3.0, 4, p);
  CHECK(j4.converged);
  CHECK(j4.value == doctest::Approx(-1.0 / 81.0).epsilon(1e-8));
  CHECK(std::abs(J_k(Profile::identity(), a, 1.0 / 3.0, 2, p).value) < 1e-10);
  CHECK_THROWS_AS(J_k(Profile::identity(), a, 1.0 / 3.0, 5, p), std::invalid_argument);
  CHECK(J_tilde(Profile::identity(), 2.0 / 3.0, 1.0) == doctest::Approx(-1.0 / 81.0));
}

TEST_CASE("J_hat on multiples of the identity") {
  for (double lam : {-2.0, 0.5, 1.0, 2.0}) {
    const double S = (lam * lam - 1.0) / 3.0;
    const double want = (lam - 1.0) * (lam - 1.0) / 3.0 - 0.75 * S * S;
    CHECK(J_hat([lam](double y) { return lam * y; }) == doctest::Approx(want).epsilon(1e-13));
  }
  CHECK(S_of([](double y) { return y; }) == doctest::Approx(0.0).epsilon(1e-15));
  // grad J_hat vanishes at id and -2 id.
  for (double lam : {1.0, -2.0}) {
    const Fn g = grad_J_hat([lam](double y) { return lam * y; });
    CHECK(std::abs(g(0.7)) < 1e-13);
  }
}

TEST_CASE("admissibility verdicts") {
  EnergyTrace tr;
  tr.E0 = 1.0;
  tr.samples = {{0.0, 1.0}, {0.1, 0.9}, {0.2, 0.8}};
  AdmissibilityVerdict v = admissibility(tr);
  CHECK(v.admissible);
  CHECK(v.monotone);
  CHECK(v.strictly_decreasing);
  tr.samples.push_back({0.3, 0.85});
  v = admissibility(tr);
  CHECK(v.admissible);
  CHECK_FALSE(v.monotone);
  CHECK(v.first_violation == -1);
  tr.samples.push_back({0.4, 1.1});
  v = admissibility(tr);
  CHECK_FALSE(v.admissible);
  CHECK(v.first_violation == 4);
  CHECK(v.worst_excess == doctest::Approx(0.1));
}

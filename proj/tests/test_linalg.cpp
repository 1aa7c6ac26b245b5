#include <cmath>
#include <random>

#include "doctest.h"
#include "rtmix/linalg.hpp"

using namespace rtmix;

namespace {

Mat random_symmetric(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  Mat a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = g(rng);
  return 0.5 * (a + a.transpose());
}

}  // namespace

TEST_CASE("sym_eigen agrees with Eigen's self-adjoint solver") {
  std::mt19937_64 rng(11);
  for (int n : {2, 3, 4}) {
    for (int i = 0; i < 200; ++i) {
      const Mat s = random_symmetric(rng, n);
      const SymEigen e = sym_eigen(s);
      const Eigen::SelfAdjointEigenSolver<Mat> ref(s);
      CHECK((e.values - ref.eigenvalues()).norm() < 1e-12 * (1.0 + s.norm()));
      CHECK((s * e.vectors - e.vectors * e.values.asDiagonal()).norm() < 1e-11 * (1.0 + s.norm()));
      CHECK(lambda_max(s) == doctest::Approx(ref.eigenvalues()(n - 1)).epsilon(1e-12));
    }
  }
}

TEST_CASE("2x2 closed form handles repeated eigenvalues") {
  Mat s = 3.0 * Mat::Identity(2, 2);
  const SymEigen e = sym_eigen(s);
  CHECK(e.min() == doctest::Approx(3.0));
  CHECK(e.max() == doctest::Approx(3.0));
}

TEST_CASE("trace_free_part removes the trace and rejects asymmetric input") {
  Mat s(3, 3);
  s << 1, 2, 3, 2, 5, 6, 3, 6, 9;
  const Mat d = trace_free_part(s);
  CHECK(std::abs(d.trace()) < 1e-15);
  CHECK(d(0, 1) == 2.0);
  s(0, 1) = 7.0;
  CHECK_THROWS_AS(trace_free_part(s), std::invalid_argument);
}

TEST_CASE("orthogonal_complement is orthonormal and orthogonal to v") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  for (int n : {2, 3, 5}) {
    Vec v(n);
    for (int k = 0; k < n; ++k) v(k) = g(rng);
    const Mat Q = orthogonal_complement(v);
    CHECK(Q.cols() == n - 1);
    CHECK((Q.transpose() * Q - Mat::Identity(n - 1, n - 1)).norm() < 1e-13);
    CHECK((Q.transpose() * v).norm() < 1e-13 * v.norm());
  }
}

TEST_CASE("outer products") {
  Vec a(2), b(2);
  a << 1, 2;
  b << 3, -1;
  const Mat s = sym_outer(a, b);
  CHECK(s(0, 1) == doctest::Approx(1 * -1 + 2 * 3));
  CHECK((s - outer(a, b) - outer(b, a)).norm() == 0.0);
  CHECK(unit(3, 1)(1) == 1.0);
  CHECK(is_symmetric(s));
}

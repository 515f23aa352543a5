#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "sasim/lti/care.hpp"
#include "test_util.hpp"

using namespace sasim;

TEST_CASE("scalar care has the closed-form stabilizing root") {
  Mat<double> A(1, 1), B(1, 1), Q(1, 1), R(1, 1);
  A << -1.0;
  B << 1.0;
  Q << 1.0;
  R << 1.0;
  const Mat<double> X = solve_care(A, B, Q, R);
  // root of -2x - x^2 + 1 = 0 with a - x < 0
  CHECK(std::abs(X(0, 0) - (std::sqrt(2.0) - 1.0)) < 1e-12);
}

TEST_CASE("stable A with Q = 0 gives X = 0") {
  std::mt19937_64 rng(7);
  const Mat<double> A = testing::random_stable_matrix(rng, 3);
  const Mat<double> B = testing::random_matrix(rng, 3, 2);
  const Mat<double> Q = Mat<double>::Zero(3, 3);
  const Mat<double> R = Mat<double>::Identity(2, 2);
  const Mat<double> X = solve_care(A, B, Q, R);
  CHECK(X.norm() < 1e-10);
}

TEST_CASE("random stable instances: residual, symmetry, stabilizing") {
  std::mt19937_64 rng(42);
  for (int k = 0; k < 25; ++k) {
    const Index n = 4;
    const Mat<double> A = testing::random_stable_matrix(rng, n);
    const Mat<double> B = testing::random_matrix(rng, n, 2);
    const Mat<double> Q = Mat<double>::Identity(n, n);
    const Mat<double> R = Mat<double>::Identity(2, 2);
    const Mat<double> X = solve_care(A, B, Q, R);

    CHECK(care_residual(A, B, Q, R, X) <= 1e-8);
    CHECK((X - X.transpose()).norm() <= 1e-10 * std::max(1.0, X.norm()));
    const Mat<double> Acl =
        A - B * R.ldlt().solve(Mat<double>(B.transpose())) * X;
    CHECK(spectral_abscissa<double>(Acl) < 0.0);
  }
}

TEST_CASE("unstabilizable oscillator raises care-unsolvable") {
  Mat<double> A(2, 2), B(2, 1), Q(2, 2), R(1, 1);
  A << 0.0, 1.0, -1.0, 0.0;
  B << 0.0, 0.0;
  Q = Mat<double>::Zero(2, 2);
  R << 1.0;
  CHECK_THROWS_WITH_AS(solve_care(A, B, Q, R),
                       doctest::Contains("care-unsolvable"), Error);
}

TEST_CASE("dimension mismatch raises argument-error") {
  Mat<double> A(2, 2), B(3, 1), Q(2, 2), R(1, 1);
  A.setIdentity();
  B.setZero();
  Q.setIdentity();
  R.setIdentity();
  CHECK_THROWS_WITH_AS(solve_care(A, B, Q, R),
                       doctest::Contains("argument-error"), Error);
}

TEST_CASE("indefinite quadratic term (Hamiltonian form)") {
  // A'X + XA - X S X + Q = 0 with S indefinite still has a stabilizing
  // solution when the Hamiltonian is dichotomic.
  std::mt19937_64 rng(11);
  for (int k = 0; k < 10; ++k) {
    const Index n = 3;
    const Mat<double> A = testing::random_stable_matrix(rng, n, 0.5);
    Mat<double> S = testing::random_matrix(rng, n, n, 0.2);
    S = Mat<double>(0.5 * (S + S.transpose()));
    Mat<double> Qh = testing::random_matrix(rng, n, n, 0.3);
    Qh = Mat<double>(Qh * Qh.transpose());
    Mat<double> X;
    try {
      X = solve_care_hamiltonian(A, S, Qh);
    } catch (const Error&) {
      continue;  // instance not dichotomic; skip
    }
    const Mat<double> resid =
        A.transpose() * X + X * A - X * S * X + Qh;
    CHECK(resid.norm() / std::max(1.0, X.norm()) <= 1e-8);
    CHECK(spectral_abscissa<double>(Mat<double>(A - S * X)) < 0.0);
  }
}

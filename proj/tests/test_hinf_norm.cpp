#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "sasim/lti/norms.hpp"
#include "test_util.hpp"

using namespace sasim;

namespace {

StateSpace first_order_lag() {
  Mat<double> A(1, 1), B(1, 1), C(1, 1), D(1, 1);
  A << -1.0;
  B << 1.0;
  C << 1.0;
  D << 0.0;
  return StateSpace(A, B, C, D);
}

}  // namespace

TEST_CASE("first-order lag has norm 1") {
  const double g = hinf_norm(first_order_lag(), 1e-9);
  CHECK(std::abs(g - 1.0) <= 1e-6);
}

TEST_CASE("zero system has norm 0") {
  Mat<double> A(2, 2);
  A << -1.0, 0.0, 0.0, -2.0;
  const StateSpace sys(A, Mat<double>::Zero(2, 1), Mat<double>::Zero(1, 2),
                       Mat<double>::Zero(1, 1));
  CHECK(hinf_norm(sys) == 0.0);
}

TEST_CASE("pure gain has norm equal to its largest singular value") {
  Mat<double> D(1, 1);
  D << 3.0;
  CHECK(hinf_norm(StateSpace::gain(D)) == 3.0);
}

TEST_CASE("unstable system raises unbounded-norm") {
  Mat<double> A(1, 1), B(1, 1), C(1, 1), D(1, 1);
  A << 0.5;
  B << 1.0;
  C << 1.0;
  D << 0.0;
  CHECK_THROWS_WITH_AS(hinf_norm(StateSpace(A, B, C, D)),
                       doctest::Contains("unbounded-norm"), Error);
}

TEST_CASE("lightly damped resonance matches the analytic peak") {
  const double zeta = 0.1, wn = 2.0;
  Mat<double> A(2, 2), B(2, 1), C(1, 2), D(1, 1);
  A << 0.0, 1.0, -wn * wn, -2.0 * zeta * wn;
  B << 0.0, 1.0;
  C << wn * wn, 0.0;
  D << 0.0;
  const double expected = 1.0 / (2.0 * zeta * std::sqrt(1.0 - zeta * zeta));
  const double g = hinf_norm(StateSpace(A, B, C, D), 1e-9);
  CHECK(std::abs(g - expected) <= 1e-6 * expected);
}

TEST_CASE("bisection soundness on random stable systems") {
  std::mt19937_64 rng(123);
  const double tol = 1e-5;
  int checked = 0;
  for (int k = 0; k < 15; ++k) {
    const Index n = 4, m = 2, p = 2;
    const StateSpace sys(testing::random_stable_matrix(rng, n),
                         testing::random_matrix(rng, n, m),
                         testing::random_matrix(rng, p, n),
                         testing::random_matrix(rng, p, m, 0.1));
    const double g = hinf_norm(sys, tol);
    if (g < 1e-9) continue;
    CHECK(hinf_gamma_certified(sys, g * (1.0 + tol)));
    CHECK_FALSE(hinf_gamma_certified(sys, g * (1.0 - tol)));

    // Frequency sweep stays below the certified bound.
    double sweep = 0.0;
    for (int i = 0; i <= 400; ++i) {
      const double w = std::pow(10.0, -2.0 + i * (4.0 / 400.0));
      sweep = std::max(sweep, max_singular_value<double>(
                                  sys.eval(std::complex<double>(0.0, w))));
    }
    CHECK(sweep <= g * (1.0 + 2.0 * tol));
    ++checked;
  }
  CHECK(checked > 5);
}

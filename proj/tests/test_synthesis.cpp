#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "sasim/lti/norms.hpp"
#include "sasim/lti/synthesis.hpp"
#include "test_util.hpp"

using namespace sasim;

namespace {

/// Double integrator under mixed-sensitivity weights: w = [d; r] with an
/// input disturbance d (keeps the origin poles reachable from w),
/// z = [W1 e; W2 u], y = e = r - G(u + 0.1 d), W1 = 1/(s+1), W2 = 0.1.
GeneralizedPlant double_integrator_mixsyn() {
  Mat<double> A(3, 3), B1(3, 2), B2(3, 1), C1(2, 3), C2(1, 3);
  A << 0, 1, 0,
       0, 0, 0,
      -1, 0, -1;
  B1 << 0, 0,
        0.1, 0,
        0, 1;
  B2 << 0, 1, 0;
  C1 << 0, 0, 1,
        0, 0, 0;
  C2 << -1, 0, 0;
  Mat<double> D11 = Mat<double>::Zero(2, 2);
  Mat<double> D12(2, 1);
  D12 << 0, 0.1;
  Mat<double> D21(1, 2);
  D21 << 0, 1;
  Mat<double> D22 = Mat<double>::Zero(1, 1);
  return GeneralizedPlant(A, B1, B2, C1, C2, D11, D12, D21, D22);
}

void check_self_consistent(const GeneralizedPlant& P,
                           const HinfController& ctl) {
  const StateSpace cl = lft_closed_loop(P, ctl.K);
  CHECK(spectral_abscissa<double>(cl.A) < 0.0);
  const double norm = hinf_norm(cl, 1e-9);
  CHECK(norm <= ctl.gamma_achieved * (1.0 + 1e-6));
}

}  // namespace

TEST_CASE("double-integrator mixed sensitivity synthesizes a stable loop") {
  const auto P = double_integrator_mixsyn();
  const auto ctl = synthesize_hinf(P, 1e-4);
  CHECK(ctl.gamma_achieved > 0.0);
  CHECK(std::isfinite(ctl.gamma_achieved));
  check_self_consistent(P, ctl);

  // The bracket end just below gamma_achieved must be infeasible, so the
  // returned level is within tolerance of the bisection infimum.
  CHECK_THROWS_AS(
      synthesize_hinf(P, 1e-4,
                      HinfSynthesisOptions<double>{
                          .gamma_max = ctl.gamma_achieved * (1.0 - 5e-3)}),
      Error);
}

TEST_CASE("gamma_max below the achievable level is synthesis-infeasible") {
  const auto P = double_integrator_mixsyn();
  CHECK_THROWS_WITH_AS(
      synthesize_hinf(P, 1e-4, HinfSynthesisOptions<double>{.gamma_max = 1e-6}),
      doctest::Contains("synthesis-infeasible"), Error);
}

TEST_CASE("rank-deficient D12 is plant-irregular") {
  auto P = double_integrator_mixsyn();
  P.D12.setZero();
  CHECK_THROWS_WITH_AS(synthesize_hinf(P, 1e-3),
                       doctest::Contains("plant-irregular"), Error);
}

TEST_CASE("rank-deficient D21 is plant-irregular") {
  auto P = double_integrator_mixsyn();
  P.D21.setZero();
  CHECK_THROWS_WITH_AS(synthesize_hinf(P, 1e-3),
                       doctest::Contains("plant-irregular"), Error);
}

TEST_CASE("unstabilizable plant is plant-irregular") {
  // Unstable mode untouched by u, invisible to z's u-channel.
  Mat<double> A(2, 2), B1(2, 1), B2(2, 1), C1(2, 2), C2(1, 2);
  A << 1, 0, 0, -1;
  B1 << 1, 1;
  B2 << 0, 1;
  C1 << 1, 1, 0, 0;
  C2 << 1, 1;
  Mat<double> D11 = Mat<double>::Zero(2, 1);
  Mat<double> D12(2, 1);
  D12 << 0, 1;
  Mat<double> D21 = Mat<double>::Identity(1, 1);
  Mat<double> D22 = Mat<double>::Zero(1, 1);
  const GeneralizedPlant P(A, B1, B2, C1, C2, D11, D12, D21, D22);
  CHECK_THROWS_WITH_AS(synthesize_hinf(P, 1e-3),
                       doctest::Contains("not stabilizable"), Error);
}

TEST_CASE("general feedthrough (D11 != 0, D22 != 0) stays self-consistent") {
  std::mt19937_64 rng(2024);
  int done = 0;
  for (int k = 0; k < 8; ++k) {
    const Index n = 3, m1 = 2, m2 = 1, p1 = 2, p2 = 1;
    Mat<double> D12(p1, m2);
    D12 << 0.2, 1.0;
    Mat<double> D21(p2, m1);
    D21 << 0.1, 1.0;
    GeneralizedPlant P(testing::random_stable_matrix(rng, n),
                       testing::random_matrix(rng, n, m1),
                       testing::random_matrix(rng, n, m2),
                       testing::random_matrix(rng, p1, n),
                       testing::random_matrix(rng, p2, n),
                       testing::random_matrix(rng, p1, m1, 0.3), D12, D21,
                       testing::random_matrix(rng, p2, m2, 0.3));
    HinfController ctl;
    try {
      ctl = synthesize_hinf(P, 1e-4);
    } catch (const Error&) {
      continue;
    }
    check_self_consistent(P, ctl);
    ++done;
  }
  CHECK(done >= 4);
}

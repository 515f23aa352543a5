#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sasim/metrics/metrics.hpp"

using namespace sasim;

TEST_CASE("rms basics") {
  CHECK(rms(Vec<double>::Constant(100, 3.0)) == doctest::Approx(3.0));
  CHECK(rms(Vec<double>::Zero(50)) == 0.0);
  CHECK_THROWS_WITH_AS(rms(Vec<double>()), doctest::Contains("argument-error"),
                       Error);

  // 2 sin(2 pi t) over whole periods: rms = amplitude / sqrt(2)
  const int n = 4000;
  Vec<double> s(n);
  for (int k = 0; k < n; ++k)
    s(k) = 2.0 * std::sin(2.0 * std::numbers::pi * (k / double(n)) * 4.0);
  CHECK(std::abs(rms(s) - std::numbers::sqrt2) < 1e-3);
}

TEST_CASE("rms is sign-invariant and positively homogeneous") {
  Vec<double> s(5);
  s << 1.0, -2.0, 0.5, 3.0, -0.25;
  CHECK(rms(Vec<double>(-s)) == rms(s));
  CHECK(rms(Vec<double>(2.5 * s)) == doctest::Approx(2.5 * rms(s)));
}

TEST_CASE("running average of a constant is the constant") {
  const int n = 101;
  Vec<double> t(n), p(n);
  for (int k = 0; k < n; ++k) {
    t(k) = k * 0.01;
    p(k) = 7.5;
  }
  const auto avg = running_average(t, p);
  for (int k = 0; k < n; ++k) CHECK(avg(k) == doctest::Approx(7.5));
}

TEST_CASE("running average of P = t gives t/2") {
  const int n = 5001;
  Vec<double> t(n), p(n);
  for (int k = 0; k < n; ++k) {
    t(k) = k * 1e-3;
    p(k) = t(k);
  }
  const auto avg = running_average(t, p);
  CHECK(avg(n - 1) == doctest::Approx(t(n - 1) / 2.0).epsilon(1e-12));
}

TEST_CASE("final-window average") {
  const int n = 5001;
  Vec<double> t(n), s(n);
  for (int k = 0; k < n; ++k) {
    t(k) = k * 1e-3;
    s(k) = t(k);
  }
  CHECK(absorbed_power_final<double>(s, t, 0.5) ==
        doctest::Approx(4.75).epsilon(1e-12));
  CHECK(absorbed_power_final<double>(Vec<double>::Constant(n, 3.25), t, 0.5) ==
        doctest::Approx(3.25));
  CHECK(absorbed_power_final<double>(Vec<double>::Constant(n, 3.25), t, 2.0) ==
        doctest::Approx(3.25));  // window-length independent for constants
  CHECK_THROWS_WITH_AS(absorbed_power_final<double>(s, t, 10.0),
                       doctest::Contains("argument-error"), Error);
}

TEST_CASE("switch_count") {
  const double c_min = 2000.0, c_max = 40000.0;
  Mat<double> constant = Mat<double>::Constant(100, 1, 5000.0);
  CHECK(switch_count(constant, c_min, c_max) == 0);

  Mat<double> alternating(10, 1);
  for (int k = 0; k < 10; ++k) alternating(k, 0) = k % 2 ? c_max : c_min;
  CHECK(switch_count(alternating, c_min, c_max) == 9);

  Mat<double> ramp(100, 1);
  for (int k = 0; k < 100; ++k) ramp(k, 0) = c_min + k * 380.0;
  CHECK(switch_count(ramp, c_min, c_max) == 0);
}

TEST_CASE("instantaneous power sums corners") {
  Mat<double> c(2, 2), v(2, 2);
  c << 1000.0, 2000.0, 3000.0, 4000.0;
  v << 0.1, 0.2, -0.3, 0.4;
  const auto p = instantaneous_power(c, v);
  CHECK(p(0) == doctest::Approx(1000 * 0.01 + 2000 * 0.04));
  CHECK(p(1) == doctest::Approx(3000 * 0.09 + 4000 * 0.16));
  CHECK((p.array() >= 0.0).all());
}

#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "sasim/common.hpp"
#include "sasim/lti/care.hpp"
#include "sasim/lti/state_space.hpp"

namespace sasim {

namespace detail {

/// Bounded-real Hamiltonian test: for a stable system and gamma > sigma_max(D),
/// gamma is a strict upper bound on the H-infinity norm iff the matrix below
/// has no purely imaginary eigenvalues.
template <typename Scalar>
bool gamma_is_upper_bound(const StateSpaceT<Scalar>& sys, Scalar gamma,
                          Scalar axis_tol) {
  const Index n = sys.states(), m = sys.inputs(), p = sys.outputs();
  const Scalar sd = max_singular_value(sys.D);
  if (gamma <= sd * (Scalar(1) + Scalar(1e-12))) return false;

  Mat<Scalar> Rg = gamma * gamma * Mat<Scalar>::Identity(m, m) -
                   sys.D.transpose() * sys.D;
  Eigen::PartialPivLU<Mat<Scalar>> lu(Rg);
  const Mat<Scalar> RiDtC = lu.solve(Mat<Scalar>(sys.D.transpose() * sys.C));
  const Mat<Scalar> RiBt = lu.solve(Mat<Scalar>(sys.B.transpose()));
  const Mat<Scalar> M1 = sys.A + sys.B * RiDtC;

  Mat<Scalar> H(2 * n, 2 * n);
  H.topLeftCorner(n, n) = M1;
  H.topRightCorner(n, n) = sys.B * RiBt;
  H.bottomLeftCorner(n, n) =
      -sys.C.transpose() *
      (Mat<Scalar>::Identity(p, p) + sys.D * lu.solve(Mat<Scalar>(sys.D.transpose()))) *
      sys.C;
  H.bottomRightCorner(n, n) = -M1.transpose();

  Mat<Scalar> Hb = H;
  balance_inplace(Hb);
  Eigen::EigenSolver<Mat<Scalar>> es(Hb, /*computeEigenvectors=*/false);
  for (Index i = 0; i < 2 * n; ++i) {
    const std::complex<Scalar> lam = es.eigenvalues()(i);
    if (std::abs(lam.real()) <= axis_tol * std::max(Scalar(1), std::abs(lam)))
      return false;
  }
  return true;
}

}  // namespace detail

/// H-infinity norm of a stable system, by bisection over the Hamiltonian
/// imaginary-axis eigenvalue test. `tol` is relative. Throws
/// Error("unbounded-norm") when A is not Hurwitz.
template <typename Scalar>
Scalar hinf_norm(const StateSpaceT<Scalar>& sys, Scalar tol = Scalar(1e-6),
                 Scalar axis_tol = Scalar(1e-8)) {
  require(tol > Scalar(0), "argument-error", "hinf_norm: tol must be > 0");
  const Index n = sys.states();
  if (n == 0) return max_singular_value(sys.D);
  require(is_hurwitz(sys.A), "unbounded-norm",
          "hinf_norm: A is not Hurwitz, the norm is unbounded");
  if (sys.B.isZero(Scalar(0)) || sys.C.isZero(Scalar(0)))
    return max_singular_value(sys.D);

  // Lower bound from frequency samples at 0, the pole magnitudes and their
  // imaginary parts, plus the feedthrough.
  Scalar lo = max_singular_value(sys.D);
  {
    Eigen::EigenSolver<Mat<Scalar>> es(sys.A, false);
    std::vector<Scalar> freqs{Scalar(0)};
    for (Index i = 0; i < n; ++i) {
      const auto lam = es.eigenvalues()(i);
      if (std::abs(lam) > Scalar(0)) freqs.push_back(std::abs(lam));
      if (std::abs(lam.imag()) > Scalar(0))
        freqs.push_back(std::abs(lam.imag()));
    }
    for (Scalar w : freqs)
      lo = std::max(lo, max_singular_value<Scalar>(
                            sys.eval(std::complex<Scalar>(Scalar(0), w))));
  }

  // Grow an upper bracket certified by the Hamiltonian test.
  Scalar hi = std::max(Scalar(2) * lo, Scalar(1e-10));
  const Scalar hi_cap = std::max(lo, Scalar(1)) * Scalar(1e16);
  while (!detail::gamma_is_upper_bound(sys, hi, axis_tol)) {
    lo = hi;
    hi *= Scalar(8);
    require(hi < hi_cap, "unbounded-norm",
            "hinf_norm: failed to bracket the norm from above");
  }

  while (hi - lo > tol * hi && hi - lo > Scalar(1e-300)) {
    const Scalar mid = Scalar(0.5) * (hi + lo);
    if (detail::gamma_is_upper_bound(sys, mid, axis_tol))
      hi = mid;
    else
      lo = mid;
  }
  return Scalar(0.5) * (hi + lo);
}

/// Exposes the certification test itself (used by property tests).
template <typename Scalar>
bool hinf_gamma_certified(const StateSpaceT<Scalar>& sys, Scalar gamma,
                          Scalar axis_tol = Scalar(1e-8)) {
  if (sys.states() == 0) return gamma > max_singular_value(sys.D);
  return detail::gamma_is_upper_bound(sys, gamma, axis_tol);
}

}  // namespace sasim

#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>

#include "sasim/common.hpp"
#include "sasim/lti/care.hpp"
#include "sasim/lti/norms.hpp"
#include "sasim/lti/plant.hpp"
#include "sasim/lti/state_space.hpp"

namespace sasim {

template <typename Scalar>
struct HinfControllerT {
  StateSpaceT<Scalar> K;
  Scalar gamma_achieved = Scalar(0);
};

using HinfController = HinfControllerT<double>;

template <typename Scalar>
struct HinfSynthesisOptions {
  Scalar gamma_max = Scalar(1e6);
  Scalar axis_tol = Scalar(1e-8);
  Scalar rank_tol = Scalar(1e-9);
  /// X/Y may carry tiny negative eigenvalues from rounding.
  Scalar psd_tol = Scalar(1e-7);
};

namespace detail {

/// Plant brought to the canonical form D12 = [0; I], D21 = [0, I] by
/// orthogonal transformations on z and w and invertible scalings on u and y.
/// D22 is set aside and reinserted on the final controller.
template <typename Scalar>
struct NormalizedPlant {
  Mat<Scalar> A, B1, B2, C1, C2, D11;
  Index n, m1, m2, p1, p2;
  Mat<Scalar> u_back;  // u = u_back * u_tilde
  Mat<Scalar> y_tr;    // y_tilde = y_tr * y
  Mat<Scalar> D22;     // original feedthrough, original coordinates
};

template <typename Scalar>
NormalizedPlant<Scalar> normalize_plant(const GeneralizedPlantT<Scalar>& P,
                                        Scalar rank_tol) {
  const Index n = P.states(), m1 = P.disturbances(), m2 = P.controls(),
              p1 = P.performances(), p2 = P.measurements();

  Eigen::JacobiSVD<Mat<Scalar>> svd12(
      P.D12, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& s12 = svd12.singularValues();
  require(s12.size() == m2 &&
              s12(m2 - 1) > rank_tol * std::max(Scalar(1), s12(0)),
          "plant-irregular", "D12 is not full column rank");

  Eigen::JacobiSVD<Mat<Scalar>> svd21(
      P.D21, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& s21 = svd21.singularValues();
  require(s21.size() == p2 &&
              s21(p2 - 1) > rank_tol * std::max(Scalar(1), s21(0)),
          "plant-irregular", "D21 is not full row rank");

  // Row transform on z: move the u-coupled rows to the bottom.
  Mat<Scalar> Tz(p1, p1);
  Tz.topRows(p1 - m2) = svd12.matrixU().transpose().bottomRows(p1 - m2);
  Tz.bottomRows(m2) = svd12.matrixU().transpose().topRows(m2);

  // Column transform on w: move the y-coupled columns to the right.
  Mat<Scalar> Tw(m1, m1);
  Tw.leftCols(m1 - p2) = svd21.matrixV().rightCols(m1 - p2);
  Tw.rightCols(p2) = svd21.matrixV().leftCols(p2);

  const Mat<Scalar> u_back =
      svd12.matrixV() * s12.cwiseInverse().asDiagonal();
  const Mat<Scalar> y_tr =
      s21.cwiseInverse().asDiagonal() * svd21.matrixU().transpose();

  NormalizedPlant<Scalar> np;
  np.n = n;
  np.m1 = m1;
  np.m2 = m2;
  np.p1 = p1;
  np.p2 = p2;
  np.A = P.A;
  np.B1 = P.B1 * Tw;
  np.B2 = P.B2 * u_back;
  np.C1 = Tz * P.C1;
  np.C2 = y_tr * P.C2;
  np.D11 = Tz * P.D11 * Tw;
  np.u_back = u_back;
  np.y_tr = y_tr;
  np.D22 = P.D22;
  return np;
}

template <typename Scalar>
Scalar gamma_lower_bound(const NormalizedPlant<Scalar>& np) {
  return std::max(
      max_singular_value<Scalar>(Mat<Scalar>(np.D11.topRows(np.p1 - np.m2))),
      max_singular_value<Scalar>(Mat<Scalar>(np.D11.leftCols(np.m1 - np.p2))));
}

template <typename Scalar>
struct GammaTest {
  bool feasible = false;
  std::string reason;
  Mat<Scalar> X, Y;
};

/// Solvability test at a fixed gamma: the two Riccati equations of the
/// output-feedback problem (Glover/Doyle formulation on the normalized
/// plant) admit stabilizing PSD solutions and rho(XY) < gamma^2.
template <typename Scalar>
GammaTest<Scalar> test_gamma(const NormalizedPlant<Scalar>& np, Scalar gamma,
                             const HinfSynthesisOptions<Scalar>& opts,
                             bool refine) {
  GammaTest<Scalar> out;
  const Index n = np.n, m1 = np.m1, m2 = np.m2, p1 = np.p1, p2 = np.p2;
  const Scalar g2 = gamma * gamma;

  Mat<Scalar> D12n = Mat<Scalar>::Zero(p1, m2);
  D12n.bottomRows(m2).setIdentity();
  Mat<Scalar> D21n = Mat<Scalar>::Zero(p2, m1);
  D21n.rightCols(p2).setIdentity();

  Mat<Scalar> D1dot(p1, m1 + m2);
  D1dot << np.D11, D12n;
  Mat<Scalar> R = D1dot.transpose() * D1dot;
  R.topLeftCorner(m1, m1).diagonal().array() -= g2;
  Eigen::FullPivLU<Mat<Scalar>> luR(R);
  if (!luR.isInvertible()) {
    out.reason = "R(gamma) singular";
    return out;
  }

  Mat<Scalar> Ddot1(p1 + p2, m1);
  Ddot1 << np.D11, D21n;
  Mat<Scalar> Rt = Ddot1 * Ddot1.transpose();
  Rt.topLeftCorner(p1, p1).diagonal().array() -= g2;
  Eigen::FullPivLU<Mat<Scalar>> luRt(Rt);
  if (!luRt.isInvertible()) {
    out.reason = "R~(gamma) singular";
    return out;
  }

  Mat<Scalar> B(n, m1 + m2);
  B << np.B1, np.B2;
  Mat<Scalar> C(p1 + p2, n);
  C << np.C1, np.C2;

  CareOptions<Scalar> copts;
  copts.imag_axis_tol = opts.axis_tol;
  copts.refine = refine;

  const Mat<Scalar> RiD1C = luR.solve(Mat<Scalar>(D1dot.transpose() * np.C1));
  const Mat<Scalar> Ax = np.A - B * RiD1C;
  Mat<Scalar> Sx = B * luR.solve(Mat<Scalar>(B.transpose()));
  Sx = Scalar(0.5) * (Sx + Sx.transpose()).eval();
  Mat<Scalar> Qx =
      np.C1.transpose() *
      (Mat<Scalar>::Identity(p1, p1) - D1dot * luR.solve(Mat<Scalar>(D1dot.transpose()))) *
      np.C1;
  Qx = Scalar(0.5) * (Qx + Qx.transpose()).eval();

  Mat<Scalar> X;
  try {
    X = solve_care_hamiltonian(Ax, Sx, Qx, copts);
  } catch (const Error& e) {
    out.reason = std::string("X Riccati: ") + e.what();
    return out;
  }
  {
    Eigen::SelfAdjointEigenSolver<Mat<Scalar>> eig(X);
    if (eig.eigenvalues().minCoeff() <
        -opts.psd_tol * std::max(Scalar(1), X.norm())) {
      out.reason = "X not positive semidefinite";
      return out;
    }
  }

  const Mat<Scalar> RtiDdot1B1t =
      luRt.solve(Mat<Scalar>(Ddot1 * np.B1.transpose()));
  const Mat<Scalar> Ay = np.A.transpose() - C.transpose() * RtiDdot1B1t;
  Mat<Scalar> Sy = C.transpose() * luRt.solve(C);
  Sy = Scalar(0.5) * (Sy + Sy.transpose()).eval();
  Mat<Scalar> Qy =
      np.B1 *
      (Mat<Scalar>::Identity(m1, m1) -
       Ddot1.transpose() * luRt.solve(Ddot1)) *
      np.B1.transpose();
  Qy = Scalar(0.5) * (Qy + Qy.transpose()).eval();

  Mat<Scalar> Y;
  try {
    Y = solve_care_hamiltonian(Ay, Sy, Qy, copts);
  } catch (const Error& e) {
    out.reason = std::string("Y Riccati: ") + e.what();
    return out;
  }
  {
    Eigen::SelfAdjointEigenSolver<Mat<Scalar>> eig(Y);
    if (eig.eigenvalues().minCoeff() <
        -opts.psd_tol * std::max(Scalar(1), Y.norm())) {
      out.reason = "Y not positive semidefinite";
      return out;
    }
  }

  Eigen::EigenSolver<Mat<Scalar>> es(Mat<Scalar>(X * Y), false);
  const Scalar rho = es.eigenvalues().cwiseAbs().maxCoeff();
  if (rho >= g2 * (Scalar(1) - Scalar(1e-12))) {
    out.reason = "rho(XY) >= gamma^2";
    return out;
  }

  out.feasible = true;
  out.X = std::move(X);
  out.Y = std::move(Y);
  return out;
}

/// Central controller at a feasible gamma (normalized coordinates).
template <typename Scalar>
StateSpaceT<Scalar> central_controller(const NormalizedPlant<Scalar>& np,
                                       Scalar gamma, const Mat<Scalar>& X,
                                       const Mat<Scalar>& Y) {
  const Index n = np.n, m1 = np.m1, m2 = np.m2, p1 = np.p1, p2 = np.p2;
  const Scalar g2 = gamma * gamma;

  Mat<Scalar> D12n = Mat<Scalar>::Zero(p1, m2);
  D12n.bottomRows(m2).setIdentity();
  Mat<Scalar> D21n = Mat<Scalar>::Zero(p2, m1);
  D21n.rightCols(p2).setIdentity();

  Mat<Scalar> D1dot(p1, m1 + m2);
  D1dot << np.D11, D12n;
  Mat<Scalar> R = D1dot.transpose() * D1dot;
  R.topLeftCorner(m1, m1).diagonal().array() -= g2;

  Mat<Scalar> Ddot1(p1 + p2, m1);
  Ddot1 << np.D11, D21n;
  Mat<Scalar> Rt = Ddot1 * Ddot1.transpose();
  Rt.topLeftCorner(p1, p1).diagonal().array() -= g2;

  Mat<Scalar> B(n, m1 + m2);
  B << np.B1, np.B2;
  Mat<Scalar> C(p1 + p2, n);
  C << np.C1, np.C2;

  const Mat<Scalar> F = -R.partialPivLu().solve(
      Mat<Scalar>(D1dot.transpose() * np.C1 + B.transpose() * X));
  // L = -(B1 Ddot1^T + Y C^T) Rt^{-1}; Rt is symmetric.
  const Mat<Scalar> L =
      -(Rt.partialPivLu().solve(
            Mat<Scalar>((np.B1 * Ddot1.transpose() + Y * C.transpose()).transpose())))
           .transpose();

  const Mat<Scalar> F12 = F.block(m1 - p2, 0, p2, n);
  const Mat<Scalar> F2 = F.bottomRows(m2);
  const Mat<Scalar> L12 = L.block(0, p1 - m2, n, m2);
  const Mat<Scalar> L2 = L.rightCols(p2);

  const Mat<Scalar> D1111 = np.D11.topLeftCorner(p1 - m2, m1 - p2);
  const Mat<Scalar> D1112 = np.D11.topRightCorner(p1 - m2, p2);
  const Mat<Scalar> D1121 = np.D11.bottomLeftCorner(m2, m1 - p2);
  const Mat<Scalar> D1122 = np.D11.bottomRightCorner(m2, p2);

  Mat<Scalar> G2inv =
      g2 * Mat<Scalar>::Identity(p1 - m2, p1 - m2) - D1111 * D1111.transpose();
  const Mat<Scalar> Dk11 =
      -D1121 * D1111.transpose() * G2inv.partialPivLu().solve(D1112) - D1122;

  const Mat<Scalar> Z =
      (Mat<Scalar>::Identity(n, n) - Y * X / g2).partialPivLu().inverse();

  const Mat<Scalar> CF = np.C2 + F12;
  const Mat<Scalar> Bk1 = Z * (-L2 + (np.B2 + L12) * Dk11);
  const Mat<Scalar> Ck1 = F2 - Dk11 * CF;
  const Mat<Scalar> Ak = np.A + B * F - Bk1 * CF;

  return StateSpaceT<Scalar>(Ak, Bk1, Ck1, Dk11);
}

/// Reinsert the measurement feedthrough: K was designed for y - D22 u.
template <typename Scalar>
StateSpaceT<Scalar> close_d22_loop(const StateSpaceT<Scalar>& K,
                                   const Mat<Scalar>& D22) {
  if (D22.isZero(Scalar(0))) return K;
  const Index m2 = K.outputs();
  Mat<Scalar> M = Mat<Scalar>::Identity(m2, m2) + K.D * D22;
  Eigen::FullPivLU<Mat<Scalar>> lu(M);
  require(lu.isInvertible(), "synthesis-infeasible",
          "controller/D22 loop is ill posed");
  const Mat<Scalar> MiC = lu.solve(K.C);
  const Mat<Scalar> MiD = lu.solve(K.D);
  return StateSpaceT<Scalar>(
      Mat<Scalar>(K.A - K.B * D22 * MiC),
      Mat<Scalar>(K.B * (Mat<Scalar>::Identity(D22.rows(), D22.rows()) - D22 * MiD)),
      MiC, MiD);
}

}  // namespace detail

/// Output-feedback H-infinity synthesis: bisects gamma over the two-Riccati
/// solvability conditions and returns the central controller at the smallest
/// feasible gamma found (relative bracket width gamma_tol). Follows the
/// standard state-space solution (Doyle/Glover/Khargonekar/Francis and the
/// general-feedthrough form in Zhou/Doyle/Glover, ch. 17).
template <typename Scalar>
HinfControllerT<Scalar> synthesize_hinf(
    const GeneralizedPlantT<Scalar>& P, Scalar gamma_tol,
    const HinfSynthesisOptions<Scalar>& opts = {}) {
  require(gamma_tol > Scalar(0), "argument-error",
          "synthesize_hinf: gamma_tol must be > 0");
  require(P.states() > 0, "argument-error",
          "synthesize_hinf: plant must have states");
  require(P.controls() > 0 && P.measurements() > 0 && P.disturbances() > 0 &&
              P.performances() > 0,
          "argument-error", "synthesize_hinf: empty channel");

  std::complex<Scalar> bad;
  if (!is_stabilizable<Scalar>(P.A, P.B2, &bad))
    throw Error("plant-irregular",
                "(A,B2) is not stabilizable: uncontrollable eigenvalue at Re=" +
                    std::to_string(bad.real()));
  if (!is_detectable<Scalar>(P.A, P.C2, &bad))
    throw Error("plant-irregular",
                "(C2,A) is not detectable: unobservable eigenvalue at Re=" +
                    std::to_string(bad.real()));

  const auto np = detail::normalize_plant(P, opts.rank_tol);

  Scalar lo = detail::gamma_lower_bound(np);
  Scalar hi = opts.gamma_max;
  require(hi > lo, "synthesis-infeasible",
          "gamma_max is below the feedthrough lower bound");

  auto top = detail::test_gamma(np, hi, opts, /*refine=*/false);
  if (!top.feasible)
    throw Error("synthesis-infeasible",
                "no admissible controller below gamma_max: " + top.reason);

  while (hi - lo > gamma_tol * hi) {
    const Scalar mid = Scalar(0.5) * (hi + lo);
    auto t = detail::test_gamma(np, mid, opts, /*refine=*/false);
    if (t.feasible)
      hi = mid;
    else
      lo = mid;
  }

  // Construct at the certified upper end of the bracket; refine the Riccati
  // solutions there. If verification trips on rounding, back off gamma once.
  Scalar gamma = hi;
  for (int attempt = 0; attempt < 3; ++attempt) {
    auto t = detail::test_gamma(np, gamma, opts, /*refine=*/true);
    if (t.feasible) {
      StateSpaceT<Scalar> Kn = detail::central_controller(np, gamma, t.X, t.Y);
      StateSpaceT<Scalar> K0(Kn.A, Mat<Scalar>(Kn.B * np.y_tr),
                             Mat<Scalar>(np.u_back * Kn.C),
                             Mat<Scalar>(np.u_back * Kn.D * np.y_tr));
      StateSpaceT<Scalar> K = detail::close_d22_loop(K0, np.D22);
      const StateSpaceT<Scalar> cl = lft_closed_loop(P, K);
      if (spectral_abscissa<Scalar>(cl.A) < Scalar(0))
        return HinfControllerT<Scalar>{std::move(K), gamma};
    }
    gamma *= Scalar(1) + std::max(Scalar(10) * gamma_tol, Scalar(1e-6));
  }
  throw Error("synthesis-infeasible",
              "controller verification failed near the optimal gamma");
}

}  // namespace sasim

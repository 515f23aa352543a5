#pragma once

#include <Eigen/Dense>

#include <utility>

#include "sasim/common.hpp"
#include "sasim/lti/state_space.hpp"

namespace sasim {

/// LTI plant partitioned for disturbance-rejection synthesis:
///   x' = A x  + B1 w + B2 u
///   z  = C1 x + D11 w + D12 u      (performance)
///   y  = C2 x + D21 w + D22 u      (measurement)
template <typename Scalar>
struct GeneralizedPlantT {
  Mat<Scalar> A, B1, B2, C1, C2, D11, D12, D21, D22;

  GeneralizedPlantT() = default;

  GeneralizedPlantT(Mat<Scalar> A_, Mat<Scalar> B1_, Mat<Scalar> B2_,
                    Mat<Scalar> C1_, Mat<Scalar> C2_, Mat<Scalar> D11_,
                    Mat<Scalar> D12_, Mat<Scalar> D21_, Mat<Scalar> D22_)
      : A(std::move(A_)), B1(std::move(B1_)), B2(std::move(B2_)),
        C1(std::move(C1_)), C2(std::move(C2_)), D11(std::move(D11_)),
        D12(std::move(D12_)), D21(std::move(D21_)), D22(std::move(D22_)) {
    const Index n = A.rows();
    require(A.cols() == n, "argument-error", "plant: A must be square");
    require(B1.rows() == n && B2.rows() == n, "argument-error",
            "plant: B1/B2 row counts must match the state dimension");
    require(C1.cols() == n && C2.cols() == n, "argument-error",
            "plant: C1/C2 column counts must match the state dimension");
    require(D11.rows() == C1.rows() && D11.cols() == B1.cols() &&
                D12.rows() == C1.rows() && D12.cols() == B2.cols() &&
                D21.rows() == C2.rows() && D21.cols() == B1.cols() &&
                D22.rows() == C2.rows() && D22.cols() == B2.cols(),
            "argument-error", "plant: feedthrough block dimensions mismatch");
    require(all_finite(A) && all_finite(B1) && all_finite(B2) &&
                all_finite(C1) && all_finite(C2) && all_finite(D11) &&
                all_finite(D12) && all_finite(D21) && all_finite(D22),
            "argument-error", "plant: matrices must be finite");
  }

  Index states() const { return A.rows(); }
  Index disturbances() const { return B1.cols(); }  // m1
  Index controls() const { return B2.cols(); }      // m2
  Index performances() const { return C1.rows(); }  // p1
  Index measurements() const { return C2.rows(); }  // p2

  /// Open-loop w -> z channel (u = 0).
  StateSpaceT<Scalar> open_loop_wz() const {
    return StateSpaceT<Scalar>(A, B1, C1, D11);
  }

  /// Full system [z; y] = P [w; u] as one realization.
  StateSpaceT<Scalar> assemble() const {
    Mat<Scalar> B(states(), disturbances() + controls());
    B << B1, B2;
    Mat<Scalar> C(performances() + measurements(), states());
    C << C1, C2;
    Mat<Scalar> D(performances() + measurements(),
                  disturbances() + controls());
    D << D11, D12, D21, D22;
    return StateSpaceT<Scalar>(A, B, C, D);
  }
};

using GeneralizedPlant = GeneralizedPlantT<double>;

/// Lower LFT: closes u = K y around the plant and returns the w -> z map.
/// Throws Error("ill-posed-interconnection") when I - DK D22 is singular.
template <typename Scalar>
StateSpaceT<Scalar> lft_closed_loop(const GeneralizedPlantT<Scalar>& P,
                                    const StateSpaceT<Scalar>& K) {
  require(K.inputs() == P.measurements() && K.outputs() == P.controls(),
          "argument-error",
          "lft: controller dimensions must match the y/u partitions");
  const Index m2 = P.controls(), p2 = P.measurements();

  Mat<Scalar> M = Mat<Scalar>::Identity(m2, m2) - K.D * P.D22;
  Eigen::FullPivLU<Mat<Scalar>> luM(M);
  require(luM.isInvertible(), "ill-posed-interconnection",
          "lft: algebraic loop, I - DK D22 is singular");
  Mat<Scalar> Mt = Mat<Scalar>::Identity(p2, p2) - P.D22 * K.D;
  Eigen::FullPivLU<Mat<Scalar>> luMt(Mt);

  // u = N (CK xK + DK C2 x + DK D21 w),    N  = (I - DK D22)^-1
  // y = Nt (C2 x + D22 CK xK + D21 w),     Nt = (I - D22 DK)^-1
  const Mat<Scalar> NDKC2 = luM.solve(Mat<Scalar>(K.D * P.C2));
  const Mat<Scalar> NCK = luM.solve(K.C);
  const Mat<Scalar> NDKD21 = luM.solve(Mat<Scalar>(K.D * P.D21));
  const Mat<Scalar> NtC2 = luMt.solve(P.C2);
  const Mat<Scalar> NtD22CK = luMt.solve(Mat<Scalar>(P.D22 * K.C));
  const Mat<Scalar> NtD21 = luMt.solve(P.D21);

  const Index n = P.states(), nK = K.states();
  Mat<Scalar> Acl(n + nK, n + nK);
  Acl.topLeftCorner(n, n) = P.A + P.B2 * NDKC2;
  Acl.topRightCorner(n, nK) = P.B2 * NCK;
  Acl.bottomLeftCorner(nK, n) = K.B * NtC2;
  Acl.bottomRightCorner(nK, nK) = K.A + K.B * NtD22CK;

  Mat<Scalar> Bcl(n + nK, P.disturbances());
  Bcl.topRows(n) = P.B1 + P.B2 * NDKD21;
  Bcl.bottomRows(nK) = K.B * NtD21;

  Mat<Scalar> Ccl(P.performances(), n + nK);
  Ccl.leftCols(n) = P.C1 + P.D12 * NDKC2;
  Ccl.rightCols(nK) = P.D12 * NCK;

  Mat<Scalar> Dcl = P.D11 + P.D12 * NDKD21;

  return StateSpaceT<Scalar>(std::move(Acl), std::move(Bcl), std::move(Ccl),
                             std::move(Dcl));
}

}  // namespace sasim

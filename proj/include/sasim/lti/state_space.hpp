#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <complex>
#include <string>
#include <utility>

#include "sasim/common.hpp"

namespace sasim {

/// Continuous-time LTI system  x' = A x + B u,  y = C x + D u.
/// Dense realization; all algebra on it is done by free functions.
template <typename Scalar>
struct StateSpaceT {
  Mat<Scalar> A, B, C, D;

  StateSpaceT() = default;

  StateSpaceT(Mat<Scalar> A_, Mat<Scalar> B_, Mat<Scalar> C_, Mat<Scalar> D_)
      : A(std::move(A_)), B(std::move(B_)), C(std::move(C_)), D(std::move(D_)) {
    require(A.rows() == A.cols(), "argument-error", "A must be square");
    require(B.rows() == A.rows(), "argument-error",
            "B row count must match state dimension");
    require(C.cols() == A.rows(), "argument-error",
            "C column count must match state dimension");
    require(D.rows() == C.rows() && D.cols() == B.cols(), "argument-error",
            "D must be outputs x inputs");
    require(all_finite(A) && all_finite(B) && all_finite(C) && all_finite(D),
            "argument-error", "state-space matrices must be finite");
  }

  /// Static (memoryless) system y = D u.
  static StateSpaceT gain(Mat<Scalar> D_) {
    const Index p = D_.rows(), m = D_.cols();
    return StateSpaceT(Mat<Scalar>::Zero(0, 0), Mat<Scalar>::Zero(0, m),
                       Mat<Scalar>::Zero(p, 0), std::move(D_));
  }

  Index states() const { return A.rows(); }
  Index inputs() const { return B.cols(); }
  Index outputs() const { return C.rows(); }

  /// Transfer matrix C (sI - A)^{-1} B + D evaluated at a complex point.
  CMat<Scalar> eval(std::complex<Scalar> s) const {
    if (states() == 0) return D.template cast<std::complex<Scalar>>();
    CMat<Scalar> sIA = -A.template cast<std::complex<Scalar>>();
    sIA.diagonal().array() += s;
    return C.template cast<std::complex<Scalar>>() *
               sIA.partialPivLu().solve(B.template cast<std::complex<Scalar>>()) +
           D.template cast<std::complex<Scalar>>();
  }
};

using StateSpace = StateSpaceT<double>;

/// max Re(lambda) over the spectrum of a square matrix; -inf for 0x0.
template <typename Scalar>
Scalar spectral_abscissa(const Mat<Scalar>& A) {
  if (A.rows() == 0) return -std::numeric_limits<Scalar>::infinity();
  Eigen::EigenSolver<Mat<Scalar>> es(A, /*computeEigenvectors=*/false);
  return es.eigenvalues().real().maxCoeff();
}

template <typename Scalar>
bool is_hurwitz(const Mat<Scalar>& A) {
  return spectral_abscissa(A) < Scalar(0);
}

/// Largest singular value; 0 for an empty matrix.
template <typename Scalar, int R, int C, int O, int MR, int MC>
Scalar max_singular_value(const Eigen::Matrix<Scalar, R, C, O, MR, MC>& M) {
  if (M.rows() == 0 || M.cols() == 0) return Scalar(0);
  return M.jacobiSvd().singularValues()(0);
}

template <typename Scalar>
Scalar max_singular_value(const CMat<Scalar>& M) {
  if (M.rows() == 0 || M.cols() == 0) return Scalar(0);
  return M.jacobiSvd().singularValues()(0);
}

/// PBH test: every eigenvalue of A with Re >= -tol must be controllable.
/// Returns the offending eigenvalue through `bad` when the test fails.
template <typename Scalar>
bool is_stabilizable(const Mat<Scalar>& A, const Mat<Scalar>& B,
                     std::complex<Scalar>* bad = nullptr) {
  const Index n = A.rows();
  if (n == 0) return true;
  Eigen::EigenSolver<Mat<Scalar>> es(A, /*computeEigenvectors=*/false);
  for (Index i = 0; i < n; ++i) {
    const std::complex<Scalar> lam = es.eigenvalues()(i);
    if (lam.real() < -Scalar(1e-9) * std::max(Scalar(1), std::abs(lam)))
      continue;
    CMat<Scalar> pencil(n, n + B.cols());
    pencil.leftCols(n) = -A.template cast<std::complex<Scalar>>();
    pencil.leftCols(n).diagonal().array() += lam;
    pencil.rightCols(B.cols()) = B.template cast<std::complex<Scalar>>();
    Eigen::ColPivHouseholderQR<CMat<Scalar>> qr(pencil);
    if (qr.rank() < n) {
      if (bad) *bad = lam;
      return false;
    }
  }
  return true;
}

template <typename Scalar>
bool is_detectable(const Mat<Scalar>& A, const Mat<Scalar>& C,
                   std::complex<Scalar>* bad = nullptr) {
  return is_stabilizable<Scalar>(A.transpose(), C.transpose(), bad);
}

}  // namespace sasim

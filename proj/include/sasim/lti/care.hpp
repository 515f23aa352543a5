#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "sasim/common.hpp"
#include "sasim/lti/state_space.hpp"

namespace sasim {

template <typename Scalar>
struct CareOptions {
  /// Eigenvalue counts as "on the imaginary axis" when
  /// |Re(lambda)| <= imag_axis_tol * max(1, |lambda|).
  Scalar imag_axis_tol = Scalar(1e-8);
  /// Newton (Kleinman) polish of the subspace solution.
  bool refine = true;
  int max_newton = 5;
  Scalar target_residual = Scalar(1e-11);
};

namespace detail {

/// Parlett-Reinsch diagonal balancing: returns d with B = D^-1 M D better
/// scaled; applied in place. Eigenvectors of B map back as v = D vb.
template <typename Scalar>
Vec<Scalar> balance_inplace(Mat<Scalar>& M) {
  const Index n = M.rows();
  Vec<Scalar> d = Vec<Scalar>::Ones(n);
  const Scalar radix = Scalar(2);
  bool done = false;
  while (!done) {
    done = true;
    for (Index i = 0; i < n; ++i) {
      Scalar c = Scalar(0), r = Scalar(0);
      for (Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(M(j, i));
        r += std::abs(M(i, j));
      }
      if (c == Scalar(0) || r == Scalar(0)) continue;
      Scalar f = Scalar(1);
      const Scalar s = c + r;
      while (c < r / radix) {
        f *= radix;
        c *= radix * radix;
      }
      while (c > r * radix) {
        f /= radix;
        c /= radix * radix;
      }
      if ((c + r) / f < Scalar(0.95) * s) {
        done = false;
        d(i) *= f;
        M.row(i) /= f;
        M.col(i) *= f;
      }
    }
  }
  return d;
}

template <typename Scalar>
Mat<Scalar> kronecker(const Mat<Scalar>& A, const Mat<Scalar>& B) {
  Mat<Scalar> K(A.rows() * B.rows(), A.cols() * B.cols());
  for (Index i = 0; i < A.rows(); ++i)
    for (Index j = 0; j < A.cols(); ++j)
      K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
  return K;
}

/// Solve A^T X + X A = W (A Hurwitz, W symmetric) through the Kronecker
/// form; adequate at the state dimensions used here (n <= ~40).
template <typename Scalar>
Mat<Scalar> solve_lyapunov(const Mat<Scalar>& A, const Mat<Scalar>& W) {
  const Index n = A.rows();
  const Mat<Scalar> eye = Mat<Scalar>::Identity(n, n);
  Mat<Scalar> L = kronecker(eye, Mat<Scalar>(A.transpose())) +
                  kronecker(Mat<Scalar>(A.transpose()), eye);
  Vec<Scalar> w = Eigen::Map<const Vec<Scalar>>(W.data(), n * n);
  Vec<Scalar> x = L.partialPivLu().solve(w);
  Mat<Scalar> X = Eigen::Map<const Mat<Scalar>>(x.data(), n, n);
  return Scalar(0.5) * (X + X.transpose()).eval();
}

template <typename Scalar>
Scalar care_residual_norm(const Mat<Scalar>& A, const Mat<Scalar>& S,
                          const Mat<Scalar>& Q, const Mat<Scalar>& X,
                          Mat<Scalar>* residual = nullptr) {
  Mat<Scalar> R =
      A.transpose() * X + X * A - X * S * X + Q;
  const Scalar norm = R.norm() / std::max(Scalar(1), X.norm());
  if (residual) *residual = std::move(R);
  return norm;
}

}  // namespace detail

/// Stabilizing solution of  A^T X + X A - X S X + Q = 0  with S, Q symmetric
/// (S need not be definite). X is extracted from the stable invariant
/// subspace of the Hamiltonian [A, -S; -Q, -A^T] via its eigenvector basis,
/// then polished with Newton steps so the relative residual is driven to
/// rounding level. Throws Error("care-unsolvable") when the Hamiltonian has
/// eigenvalues on the imaginary axis or the subspace is not complementary.
template <typename Scalar>
Mat<Scalar> solve_care_hamiltonian(const Mat<Scalar>& A, const Mat<Scalar>& S,
                                   const Mat<Scalar>& Q,
                                   const CareOptions<Scalar>& opts = {}) {
  const Index n = A.rows();
  require(A.cols() == n && S.rows() == n && S.cols() == n && Q.rows() == n &&
              Q.cols() == n,
          "argument-error", "care: A, S, Q must be n x n");
  require(all_finite(A) && all_finite(S) && all_finite(Q), "argument-error",
          "care: matrices must be finite");
  if (n == 0) return Mat<Scalar>::Zero(0, 0);

  Mat<Scalar> H(2 * n, 2 * n);
  H << A, -S, -Q, -A.transpose();

  Mat<Scalar> Hb = H;
  const Vec<Scalar> d = detail::balance_inplace(Hb);

  Eigen::EigenSolver<Mat<Scalar>> es(Hb, /*computeEigenvectors=*/true);
  require(es.info() == Eigen::Success, "care-unsolvable",
          "eigendecomposition of the Hamiltonian failed");

  std::vector<Index> stable;
  stable.reserve(n);
  for (Index i = 0; i < 2 * n; ++i) {
    const std::complex<Scalar> lam = es.eigenvalues()(i);
    const Scalar tol =
        opts.imag_axis_tol * std::max(Scalar(1), std::abs(lam));
    if (std::abs(lam.real()) <= tol)
      throw Error("care-unsolvable",
                  "Hamiltonian has eigenvalues on the imaginary axis");
    if (lam.real() < Scalar(0)) stable.push_back(i);
  }
  require(static_cast<Index>(stable.size()) == n, "care-unsolvable",
          "stable invariant subspace has dimension " +
              std::to_string(stable.size()) + ", expected " +
              std::to_string(n));

  CMat<Scalar> V(2 * n, n);
  for (Index k = 0; k < n; ++k)
    V.col(k) = d.template cast<std::complex<Scalar>>().asDiagonal() *
               es.eigenvectors().col(stable[static_cast<size_t>(k)]);

  const CMat<Scalar> V1 = V.topRows(n);
  const CMat<Scalar> V2 = V.bottomRows(n);
  Eigen::FullPivLU<CMat<Scalar>> lu(V1.transpose());
  require(lu.isInvertible(), "care-unsolvable",
          "stable subspace is not complementary (V1 singular)");
  // X = V2 V1^{-1}, computed as (V1^T \ V2^T)^T; the result is real up to
  // rounding because the subspace is closed under conjugation.
  Mat<Scalar> X = lu.solve(V2.transpose()).transpose().real();
  X = Scalar(0.5) * (X + X.transpose()).eval();

  Scalar res = detail::care_residual_norm(A, S, Q, X);
  if (opts.refine) {
    for (int it = 0; it < opts.max_newton && res > opts.target_residual;
         ++it) {
      const Mat<Scalar> Acl = A - S * X;
      if (spectral_abscissa<Scalar>(Acl) >= Scalar(0)) break;
      Mat<Scalar> R;
      detail::care_residual_norm(A, S, Q, X, &R);
      const Mat<Scalar> dX = detail::solve_lyapunov<Scalar>(Acl, Mat<Scalar>(-R));
      const Mat<Scalar> Xn = Scalar(0.5) * (X + dX + (X + dX).transpose());
      const Scalar res_n = detail::care_residual_norm(A, S, Q, Xn);
      if (res_n >= res) break;
      X = Xn;
      res = res_n;
    }
  }

  require(spectral_abscissa<Scalar>(Mat<Scalar>(A - S * X)) < Scalar(0),
          "care-unsolvable", "computed solution is not stabilizing");
  return X;
}

/// Stabilizing solution of A^T X + X A - X B R^{-1} B^T X + Q = 0
/// (R symmetric positive definite, Q symmetric).
template <typename Scalar>
Mat<Scalar> solve_care(const Mat<Scalar>& A, const Mat<Scalar>& B,
                       const Mat<Scalar>& Q, const Mat<Scalar>& R,
                       const CareOptions<Scalar>& opts = {}) {
  const Index n = A.rows(), m = B.cols();
  require(A.cols() == n, "argument-error", "care: A must be square");
  require(B.rows() == n, "argument-error", "care: B must have n rows");
  require(Q.rows() == n && Q.cols() == n, "argument-error",
          "care: Q must be n x n");
  require(R.rows() == m && R.cols() == m, "argument-error",
          "care: R must be m x m");
  require((Q - Q.transpose()).norm() <=
              Scalar(1e-10) * std::max(Scalar(1), Q.norm()),
          "argument-error", "care: Q must be symmetric");
  require((R - R.transpose()).norm() <=
              Scalar(1e-10) * std::max(Scalar(1), R.norm()),
          "argument-error", "care: R must be symmetric");

  Eigen::LLT<Mat<Scalar>> llt(R);
  require(llt.info() == Eigen::Success, "argument-error",
          "care: R must be positive definite");
  Mat<Scalar> S = B * llt.solve(Mat<Scalar>(B.transpose()));
  S = Scalar(0.5) * (S + S.transpose()).eval();
  return solve_care_hamiltonian(A, S, Q, opts);
}

/// Relative Frobenius residual of a candidate CARE solution.
template <typename Scalar>
Scalar care_residual(const Mat<Scalar>& A, const Mat<Scalar>& B,
                     const Mat<Scalar>& Q, const Mat<Scalar>& R,
                     const Mat<Scalar>& X) {
  Eigen::LLT<Mat<Scalar>> llt(R);
  Mat<Scalar> S = B * llt.solve(Mat<Scalar>(B.transpose()));
  return detail::care_residual_norm(A, Mat<Scalar>(Scalar(0.5) * (S + S.transpose())), Q, X);
}

}  // namespace sasim

#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "sasim/common.hpp"

namespace sasim {

/// Exact one-step propagator for x' = A x + B w(t) over a fixed dt, with the
/// input reconstructed as the quadratic through its samples at t, t+dt/2 and
/// t+dt. Unconditionally stable, so stiff synthesized controllers integrate
/// cleanly at the plant's step size. Moment matrices come from the Van Loan
/// augmented-exponential construction:
///   Ad = e^{A dt},  Mk = \int_0^dt e^{A(dt-s)} B s^k ds  (k = 0, 1, 2).
template <typename Scalar>
class ExactStepper {
 public:
  ExactStepper() = default;

  ExactStepper(const Mat<Scalar>& A, const Mat<Scalar>& B, Scalar dt)
      : dt_(dt) {
    require(dt > Scalar(0), "argument-error", "ExactStepper: dt must be > 0");
    const Index n = A.rows(), m = B.cols();
    Mat<Scalar> C = Mat<Scalar>::Zero(n + 3 * m, n + 3 * m);
    C.topLeftCorner(n, n) = A;
    C.block(0, n, n, m) = B;
    C.block(n, n + m, m, m).setIdentity();
    C.block(n + m, n + 2 * m, m, m).setIdentity();
    const Mat<Scalar> E = (C * dt).exp();
    Ad_ = E.topLeftCorner(n, n);
    M0_ = E.block(0, n, n, m);
    M1_ = E.block(0, n + m, n, m);            // \int e B s ds / 1!
    M2_ = Scalar(2) * E.block(0, n + 2 * m, n, m);  // 2 * \int e B s^2/2! ds
  }

  Scalar dt() const { return dt_; }

  Vec<Scalar> step(const Vec<Scalar>& x, const Vec<Scalar>& w0,
                   const Vec<Scalar>& w_half, const Vec<Scalar>& w1) const {
    // w(s) = w0 + b s + c s^2 through the three samples
    const Vec<Scalar> b =
        (Scalar(-3) * w0 + Scalar(4) * w_half - w1) / dt_;
    const Vec<Scalar> c =
        Scalar(2) * (w0 - Scalar(2) * w_half + w1) / (dt_ * dt_);
    return Ad_ * x + M0_ * w0 + M1_ * b + M2_ * c;
  }

 private:
  Scalar dt_ = Scalar(0);
  Mat<Scalar> Ad_, M0_, M1_, M2_;
};

}  // namespace sasim

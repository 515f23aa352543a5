#pragma once

#include <Eigen/Dense>

#include <string>
#include <utility>

#include "sasim/common.hpp"
#include "sasim/lti/discretize.hpp"
#include "sasim/lti/synthesis.hpp"
#include "sasim/model/weights.hpp"

namespace sasim {

/// Anti-windup arrangement for the synthesized controller: the loop is
/// closed around an unconstrained internal copy of the vehicle model, never
/// around the saturated plant. Each step advances [model; controller] over
/// one plant step, driven by the same road signal the plant sees, and emits
/// the total damper force the model's damper is applying; the simulation
/// clips that request into the real device range. The combined LTI pair is
/// propagated by the exact discretization (ExactStepper): synthesized
/// controllers carry observer modes far stiffer than the plant, well beyond
/// what an explicit step at the plant's dt could integrate.
template <typename Scalar>
class HinfRuntimeT {
 public:
  HinfRuntimeT() = default;

  HinfRuntimeT(const SynthesisModelT<Scalar>& model,
               HinfControllerT<Scalar> controller)
      : controller_(std::move(controller)), c_nominal_(model.c_nominal) {
    const auto& K = controller_.K;
    const Index n = model.A.rows(), nk = K.states();
    const Index nu = model.B_u.cols();
    require(K.inputs() == model.C_meas.rows() && K.outputs() == nu,
            "argument-error",
            "controller dimensions do not match the model measurements");

    // Resolve u = K y against y = C x + D_meas_u u.
    Mat<Scalar> M =
        Mat<Scalar>::Identity(nu, nu) - K.D * model.D_meas_u;
    Eigen::FullPivLU<Mat<Scalar>> lu(M);
    require(lu.isInvertible(), "ill-posed-interconnection",
            "controller/model measurement loop is singular");
    const Mat<Scalar> NDKC = lu.solve(Mat<Scalar>(K.D * model.C_meas));
    const Mat<Scalar> NCK = lu.solve(K.C);

    cu_.resize(nu, n + nk);
    cu_ << NDKC, NCK;

    const Mat<Scalar> y_of_x =
        model.C_meas + model.D_meas_u * NDKC;  // y as a function of [x; xK]
    const Mat<Scalar> y_of_xk = model.D_meas_u * NCK;

    acl_.resize(n + nk, n + nk);
    acl_.topLeftCorner(n, n) = model.A + model.B_u * NDKC;
    acl_.topRightCorner(n, nk) = model.B_u * NCK;
    acl_.bottomLeftCorner(nk, n) = K.B * y_of_x;
    acl_.bottomRightCorner(nk, nk) = K.A + K.B * y_of_xk;

    bcl_.resize(n + nk, model.B_road.cols());
    bcl_.topRows(n) = model.B_road;
    bcl_.bottomRows(nk).setZero();

    defrate_.resize(c_nominal_.size(), n + nk);
    defrate_ << model.C_defrate, Mat<Scalar>::Zero(c_nominal_.size(), nk);

    state_ = Vec<Scalar>::Zero(n + nk);
  }

  const HinfControllerT<Scalar>& controller() const { return controller_; }
  const Vec<Scalar>& state() const { return state_; }
  Scalar time() const { return t_; }

  /// Total damper force requested on each corner at the current instant.
  Vec<Scalar> force_request() const {
    const Vec<Scalar> u = cu_ * state_;
    const Vec<Scalar> v_def = defrate_ * state_;
    return c_nominal_.cwiseProduct(v_def) + u;
  }

  /// Advance model + controller over [t, t+dt] with road samples at
  /// t, t+dt/2 and t+dt (one entry per corner each).
  void step(const Vec<Scalar>& w0, const Vec<Scalar>& w_half,
            const Vec<Scalar>& w1, Scalar dt) {
    require(dt > Scalar(0), "argument-error", "dt must be > 0");
    if (stepper_.dt() != dt) stepper_ = ExactStepper<Scalar>(acl_, bcl_, dt);
    state_ = stepper_.step(state_, w0, w_half, w1);
    t_ += dt;
    require(state_.allFinite(), "runtime-divergence",
            "controller/model state diverged at t=" + std::to_string(t_));
  }

 private:
  HinfControllerT<Scalar> controller_;
  Vec<Scalar> c_nominal_;
  Mat<Scalar> acl_, bcl_, cu_, defrate_;
  ExactStepper<Scalar> stepper_;
  Vec<Scalar> state_;
  Scalar t_ = Scalar(0);
};

using HinfRuntime = HinfRuntimeT<double>;

}  // namespace sasim

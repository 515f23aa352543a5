#pragma once

#include <Eigen/Core>

#include <cmath>

#include "sasim/common.hpp"
#include "sasim/model/weights.hpp"

namespace sasim {

template <typename Scalar>
struct QuarterCarParamsT {
  Scalar m_s;        // sprung mass, kg
  Scalar m_u;        // unsprung mass, kg
  Scalar k_s;        // suspension stiffness, N/m
  Scalar k_t;        // tire stiffness, N/m
  Scalar c_min;      // damping bounds, N s/m
  Scalar c_max;
  Scalar c_passive;

  void validate() const {
    require(m_s > 0 && m_u > 0 && k_s > 0 && k_t > 0 && c_min > 0 &&
                c_max > 0 && c_passive > 0,
            "argument-error", "quarter-car parameters must be positive");
    // equality is allowed so a degenerate range can emulate a fixed damper
    require(c_min <= c_max, "argument-error", "c_min must not exceed c_max");
  }
};

using QuarterCarParams = QuarterCarParamsT<double>;

/// Heavy-truck corner: the "paper-quarter" built-in parameter set.
template <typename Scalar = double>
QuarterCarParamsT<Scalar> paper_quarter_params() {
  return {Scalar(2250), Scalar(200), Scalar(180000), Scalar(500000),
          Scalar(2000), Scalar(40000), Scalar(5000)};
}

/// State layout [x_s, v_s, x_u, v_u] (displacements from static equilibrium).
template <typename Scalar>
using QuarterCarState = Eigen::Matrix<Scalar, 4, 1>;

template <typename Scalar>
Scalar qc_deflection(const QuarterCarState<Scalar>& x) {
  return x(0) - x(2);
}

template <typename Scalar>
Scalar qc_deflection_rate(const QuarterCarState<Scalar>& x) {
  return x(1) - x(3);
}

/// Equations of motion. `c_in` is the active damping coefficient; `u_force`
/// is an additional damper force on top of c_in * v_def (zero in plain
/// simulation; the LTI extraction linearizes through it).
///   m_s a_s = -(k_s x_def + c_in v_def + u)
///   m_u a_u =  (k_s x_def + c_in v_def + u) - k_t (x_u - x_r)
template <typename Scalar>
QuarterCarState<Scalar> quarter_car_rhs(const QuarterCarParamsT<Scalar>& p,
                                        const QuarterCarState<Scalar>& x,
                                        Scalar c_in, Scalar x_r,
                                        Scalar u_force = Scalar(0)) {
  require(x.allFinite() && is_finite(c_in) && is_finite(x_r) &&
              is_finite(u_force),
          "argument-error", "quarter_car_rhs: non-finite input");
  const Scalar x_def = x(0) - x(2);
  const Scalar v_def = x(1) - x(3);
  const Scalar f = p.k_s * x_def + c_in * v_def + u_force;
  QuarterCarState<Scalar> d;
  d(0) = x(1);
  d(1) = -f / p.m_s;
  d(2) = x(3);
  d(3) = (f - p.k_t * (x(2) - x_r)) / p.m_u;
  return d;
}

template <typename Scalar>
Scalar quarter_car_sprung_accel(const QuarterCarParamsT<Scalar>& p,
                                const QuarterCarState<Scalar>& x, Scalar c_in,
                                Scalar u_force = Scalar(0)) {
  return -(p.k_s * (x(0) - x(2)) + c_in * (x(1) - x(3)) + u_force) / p.m_s;
}

/// Sprung + unsprung kinetic energy plus spring and tire strain energy.
template <typename Scalar>
Scalar quarter_car_energy(const QuarterCarParamsT<Scalar>& p,
                          const QuarterCarState<Scalar>& x) {
  const Scalar x_def = x(0) - x(2);
  return Scalar(0.5) * (p.m_s * x(1) * x(1) + p.m_u * x(3) * x(3) +
                        p.k_s * x_def * x_def + p.k_t * x(2) * x(2));
}

/// Weighted synthesis plant linearized at damping c_nominal.
///   w = [x_r, n1, n2], u = damper-force deviation,
///   z = [accel-weighted a_s, control-weighted u],
///   y = [x_def + noise n1, a_s + noise n2].
/// With road shaping off the plant has the bare 4 model states.
template <typename Scalar>
SynthesisModelT<Scalar> quarter_car_synthesis_model(
    const QuarterCarParamsT<Scalar>& p, Scalar c_nominal,
    const HinfDesignWeightsT<Scalar>& w = {}) {
  p.validate();
  require(c_nominal >= p.c_min && c_nominal <= p.c_max, "argument-error",
          "c_nominal must lie within [c_min, c_max]");
  require(w.control > Scalar(0), "plant-irregular",
          "zero control weight: D12 loses effective column rank (the "
          "control-to-performance channel has an imaginary-axis zero)");
  require(w.noise > Scalar(0), "plant-irregular",
          "zero measurement-noise weight: D21 loses full row rank");
  require(w.accel >= Scalar(0), "argument-error",
          "acceleration weight must be nonnegative");

  SynthesisModelT<Scalar> m;
  m.c_nominal = Vec<Scalar>::Constant(1, c_nominal);

  // The dynamics are linear in (x, x_r, u) at fixed damping; assemble the
  // realization column by column through the rhs itself.
  m.A.resize(4, 4);
  for (Index j = 0; j < 4; ++j) {
    QuarterCarState<Scalar> e = QuarterCarState<Scalar>::Zero();
    e(j) = Scalar(1);
    m.A.col(j) = quarter_car_rhs(p, e, c_nominal, Scalar(0));
  }
  const QuarterCarState<Scalar> zero = QuarterCarState<Scalar>::Zero();
  m.B_road = quarter_car_rhs(p, zero, c_nominal, Scalar(1));
  m.B_u = quarter_car_rhs(p, zero, c_nominal, Scalar(0), Scalar(1));

  m.C_defrate.resize(1, 4);
  m.C_defrate << 0, 1, 0, -1;

  m.C_meas.resize(2, 4);
  m.C_meas << 1, 0, -1, 0,          // deflection
      m.A(1, 0), m.A(1, 1), m.A(1, 2), m.A(1, 3);  // sprung acceleration
  m.D_meas_u.resize(2, 1);
  m.D_meas_u << Scalar(0), m.B_u(1);

  m.plant = detail::assemble_weighted_plant<Scalar>(
      m.A, m.B_road, m.B_u, m.C_meas, m.D_meas_u, {{Index(1), w.accel}}, w);
  return m;
}

template <typename Scalar>
GeneralizedPlantT<Scalar> quarter_car_generalized_plant(
    const QuarterCarParamsT<Scalar>& p, Scalar c_nominal,
    const HinfDesignWeightsT<Scalar>& w = {}) {
  return quarter_car_synthesis_model(p, c_nominal, w).plant;
}

}  // namespace sasim

#pragma once

#include <Eigen/Core>

#include <vector>

#include "sasim/common.hpp"
#include "sasim/model/weights.hpp"

namespace sasim {

/// Rigid sprung body (heave / pitch / roll, small angles) over one unsprung
/// mass per corner. Corners are ordered (axle 0: left, right), (axle 1:
/// left, right), ... so that left/right contributions cancel exactly under
/// symmetric excitation.
template <typename Scalar>
struct FullVehicleParamsT {
  Scalar m_s;
  Scalar I_pitch, I_roll;
  std::vector<Scalar> axle_from_front;  // axle positions, front axle at 0
  Scalar cg_from_front;
  Scalar half_track;
  // per corner
  std::vector<Scalar> m_u, k_s, k_t, c_min, c_max, c_passive;

  Index axles() const { return static_cast<Index>(axle_from_front.size()); }
  Index corners() const { return 2 * axles(); }

  /// Signed longitudinal arm from the CG (positive rearward).
  Scalar lon_arm(Index corner) const {
    return axle_from_front[static_cast<size_t>(corner / 2)] - cg_from_front;
  }
  /// Signed lateral arm from the centerline (left positive).
  Scalar lat_arm(Index corner) const {
    return (corner % 2 == 0) ? half_track : -half_track;
  }

  void validate() const {
    require(m_s > 0 && I_pitch > 0 && I_roll > 0 && half_track > 0,
            "argument-error", "full-vehicle body parameters must be positive");
    require(!axle_from_front.empty(), "argument-error",
            "at least one axle required");
    require(axle_from_front.front() == Scalar(0), "argument-error",
            "first axle must sit at position 0");
    for (size_t i = 1; i < axle_from_front.size(); ++i)
      require(axle_from_front[i] > axle_from_front[i - 1], "argument-error",
              "axle positions must be strictly increasing");
    require(cg_from_front >= axle_from_front.front() &&
                cg_from_front <= axle_from_front.back(),
            "argument-error", "cg must lie within the wheelbase");
    const size_t c = static_cast<size_t>(corners());
    require(m_u.size() == c && k_s.size() == c && k_t.size() == c &&
                c_min.size() == c && c_max.size() == c && c_passive.size() == c,
            "argument-error", "per-corner arrays must have 2 x axle entries");
    for (size_t i = 0; i < c; ++i) {
      require(m_u[i] > 0 && k_s[i] > 0 && k_t[i] > 0 && c_min[i] > 0 &&
                  c_max[i] > 0 && c_passive[i] > 0,
              "argument-error", "per-corner parameters must be positive");
      require(c_min[i] <= c_max[i], "argument-error",
              "c_min must not exceed c_max on any corner");
    }
  }
};

using FullVehicleParams = FullVehicleParamsT<double>;

/// The "paper-6axle" built-in: 9 t sprung mass, 12 corners, softer front
/// axle. Pitch/roll inertias are toolkit values (radii of gyration of about
/// 1.2 m and 0.7 m), not part of the published truck data.
template <typename Scalar = double>
FullVehicleParamsT<Scalar> paper_6axle_params() {
  FullVehicleParamsT<Scalar> p;
  p.m_s = Scalar(9000);
  p.I_pitch = Scalar(13000);
  p.I_roll = Scalar(4500);
  p.axle_from_front = {Scalar(0),   Scalar(1),   Scalar(1.9),
                       Scalar(2.4), Scalar(3.0), Scalar(3.6)};
  p.cg_from_front = Scalar(1.7);
  p.half_track = Scalar(1);
  const Index c = 12;
  p.m_u.assign(c, Scalar(200));
  p.k_t.assign(c, Scalar(500000));
  p.c_min.assign(c, Scalar(2000));
  p.c_max.assign(c, Scalar(40000));
  p.c_passive.assign(c, Scalar(5000));
  p.k_s.assign(c, Scalar(180000));
  p.k_s[0] = p.k_s[1] = Scalar(130000);  // front axle
  return p;
}

/// State layout: [z, vz, theta, vtheta, phi, vphi,
///                x_u0, v_u0, x_u1, v_u1, ...]  (6 + 2 * corners entries).
template <typename Scalar>
Index full_vehicle_state_dim(const FullVehicleParamsT<Scalar>& p) {
  return 6 + 2 * p.corners();
}

template <typename Scalar>
Scalar fv_corner_deflection(const FullVehicleParamsT<Scalar>& p,
                            const Vec<Scalar>& x, Index i) {
  const Scalar zi = x(0) - p.lon_arm(i) * x(2) + p.lat_arm(i) * x(4);
  return zi - x(6 + 2 * i);
}

template <typename Scalar>
Scalar fv_corner_deflection_rate(const FullVehicleParamsT<Scalar>& p,
                                 const Vec<Scalar>& x, Index i) {
  const Scalar vzi = x(1) - p.lon_arm(i) * x(3) + p.lat_arm(i) * x(5);
  return vzi - x(7 + 2 * i);
}

/// Equations of motion; c_in, x_r and the optional extra damper force are
/// per-corner vectors.
template <typename Scalar>
Vec<Scalar> full_vehicle_rhs(const FullVehicleParamsT<Scalar>& p,
                             const Vec<Scalar>& x, const Vec<Scalar>& c_in,
                             const Vec<Scalar>& x_r,
                             const Vec<Scalar>& u_force = Vec<Scalar>()) {
  const Index nc = p.corners();
  require(x.size() == full_vehicle_state_dim(p) && c_in.size() == nc &&
              x_r.size() == nc,
          "argument-error", "full_vehicle_rhs: array sizes must match corners");
  require(u_force.size() == 0 || u_force.size() == nc, "argument-error",
          "full_vehicle_rhs: u_force must be empty or per-corner");
  require(x.allFinite() && c_in.allFinite() && x_r.allFinite(),
          "argument-error", "full_vehicle_rhs: non-finite input");

  Vec<Scalar> d(x.size());
  d(0) = x(1);
  d(2) = x(3);
  d(4) = x(5);

  Scalar heave = Scalar(0), pitch = Scalar(0), roll = Scalar(0);
  for (Index i = 0; i < nc; ++i) {
    const Scalar l = p.lon_arm(i), s = p.lat_arm(i);
    const Scalar x_def = fv_corner_deflection(p, x, i);
    const Scalar v_def = fv_corner_deflection_rate(p, x, i);
    const Scalar u = u_force.size() ? u_force(i) : Scalar(0);
    const size_t k = static_cast<size_t>(i);
    // suspension force on the body, positive upward
    const Scalar f = -(p.k_s[k] * x_def + c_in(i) * v_def + u);
    heave += f;
    pitch += -l * f;
    roll += s * f;
    d(6 + 2 * i) = x(7 + 2 * i);
    d(7 + 2 * i) = (-f - p.k_t[k] * (x(6 + 2 * i) - x_r(i))) / p.m_u[k];
  }
  d(1) = heave / p.m_s;
  d(3) = pitch / p.I_pitch;
  d(5) = roll / p.I_roll;
  return d;
}

/// Vertical acceleration of the corner attachment points, given a state
/// derivative from full_vehicle_rhs.
template <typename Scalar>
Vec<Scalar> fv_corner_accels(const FullVehicleParamsT<Scalar>& p,
                             const Vec<Scalar>& deriv) {
  Vec<Scalar> a(p.corners());
  for (Index i = 0; i < p.corners(); ++i)
    a(i) = deriv(1) - p.lon_arm(i) * deriv(3) + p.lat_arm(i) * deriv(5);
  return a;
}

/// Centralized synthesis plant for the full vehicle.
///   w = [per-corner road, noise per measurement],
///   u = per-corner damper-force deviation,
///   z = [weighted heave/pitch/roll accelerations, weighted u],
///   y = [per-corner deflection, heave/pitch/roll accelerations] + noise.
template <typename Scalar>
SynthesisModelT<Scalar> full_vehicle_synthesis_model(
    const FullVehicleParamsT<Scalar>& p, const Vec<Scalar>& c_nominal,
    const HinfDesignWeightsT<Scalar>& w = {}) {
  p.validate();
  const Index nc = p.corners();
  require(c_nominal.size() == nc, "argument-error",
          "c_nominal must be per-corner");
  for (Index i = 0; i < nc; ++i)
    require(c_nominal(i) >= p.c_min[static_cast<size_t>(i)] &&
                c_nominal(i) <= p.c_max[static_cast<size_t>(i)],
            "argument-error", "c_nominal must lie within [c_min, c_max]");
  require(w.control > Scalar(0), "plant-irregular",
          "zero control weight: D12 loses effective column rank");
  require(w.noise > Scalar(0), "plant-irregular",
          "zero measurement-noise weight: D21 loses full row rank");

  const Index n = full_vehicle_state_dim(p);
  const Index p2 = nc + 3;

  SynthesisModelT<Scalar> m;
  m.c_nominal = c_nominal;

  const Vec<Scalar> zero_state = Vec<Scalar>::Zero(n);
  const Vec<Scalar> zero_c = c_nominal;
  const Vec<Scalar> zero_r = Vec<Scalar>::Zero(nc);

  m.A.resize(n, n);
  for (Index j = 0; j < n; ++j) {
    Vec<Scalar> e = Vec<Scalar>::Zero(n);
    e(j) = Scalar(1);
    m.A.col(j) = full_vehicle_rhs(p, e, zero_c, zero_r);
  }
  m.B_road.resize(n, nc);
  m.B_u.resize(n, nc);
  for (Index i = 0; i < nc; ++i) {
    Vec<Scalar> er = Vec<Scalar>::Zero(nc);
    er(i) = Scalar(1);
    m.B_road.col(i) = full_vehicle_rhs(p, zero_state, zero_c, er);
    Vec<Scalar> eu = Vec<Scalar>::Zero(nc);
    eu(i) = Scalar(1);
    m.B_u.col(i) = full_vehicle_rhs(p, zero_state, zero_c, zero_r, eu);
  }

  m.C_defrate = Mat<Scalar>::Zero(nc, n);
  Mat<Scalar> C_def = Mat<Scalar>::Zero(nc, n);
  for (Index i = 0; i < nc; ++i) {
    const Scalar l = p.lon_arm(i), s = p.lat_arm(i);
    C_def(i, 0) = Scalar(1);
    C_def(i, 2) = -l;
    C_def(i, 4) = s;
    C_def(i, 6 + 2 * i) = Scalar(-1);
    m.C_defrate(i, 1) = Scalar(1);
    m.C_defrate(i, 3) = -l;
    m.C_defrate(i, 5) = s;
    m.C_defrate(i, 7 + 2 * i) = Scalar(-1);
  }

  m.C_meas.resize(p2, n);
  m.C_meas.topRows(nc) = C_def;
  m.C_meas.row(nc + 0) = m.A.row(1);
  m.C_meas.row(nc + 1) = m.A.row(3);
  m.C_meas.row(nc + 2) = m.A.row(5);
  m.D_meas_u = Mat<Scalar>::Zero(p2, nc);
  m.D_meas_u.row(nc + 0) = m.B_u.row(1);
  m.D_meas_u.row(nc + 1) = m.B_u.row(3);
  m.D_meas_u.row(nc + 2) = m.B_u.row(5);

  m.plant = detail::assemble_weighted_plant<Scalar>(
      m.A, m.B_road, m.B_u, m.C_meas, m.D_meas_u,
      {{Index(1), w.accel}, {Index(3), w.pitch_accel},
       {Index(5), w.roll_accel}},
      w);
  return m;
}

template <typename Scalar>
GeneralizedPlantT<Scalar> full_vehicle_generalized_plant(
    const FullVehicleParamsT<Scalar>& p, const Vec<Scalar>& c_nominal,
    const HinfDesignWeightsT<Scalar>& w = {}) {
  return full_vehicle_synthesis_model(p, c_nominal, w).plant;
}

}  // namespace sasim

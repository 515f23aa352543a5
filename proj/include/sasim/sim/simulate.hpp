#pragma once

#include <Eigen/Core>

#include <cmath>
#include <utility>
#include <vector>

#include "sasim/common.hpp"
#include "sasim/control/hinf_runtime.hpp"
#include "sasim/control/laws.hpp"
#include "sasim/model/full_vehicle.hpp"
#include "sasim/model/quarter_car.hpp"
#include "sasim/road/road.hpp"
#include "sasim/sim/integrate.hpp"

namespace sasim {

struct SimConfig {
  double dt = 1e-3;
  double duration = 5.0;
  int controller_period = 1;  // command update every this many steps

  void validate() const {
    require(dt > 0.0, "argument-error", "dt must be > 0");
    require(duration >= dt, "argument-error", "duration must be >= dt");
    require(controller_period >= 1, "argument-error",
            "controller_period must be >= 1");
  }
};

/// Uniformly sampled log of a closed-loop run. Row k is the instant
/// t = k dt with the command that becomes active there.
template <typename Scalar>
struct TrajectoryT {
  Vec<Scalar> time;
  Mat<Scalar> states;    // samples x state dimension
  Mat<Scalar> commands;  // samples x corners
  Mat<Scalar> forces;    // damper forces, samples x corners
  Mat<Scalar> roads;     // samples x corners
  Mat<Scalar> defrates;  // deflection rates, samples x corners
  Vec<Scalar> accel;     // sprung / CG vertical acceleration

  Index samples() const { return time.size(); }
  Index corners() const { return commands.cols(); }
};

using Trajectory = TrajectoryT<double>;

enum class ControlKind { kPassive, kAdd, kPdd, kHinf };

template <typename Scalar>
struct ControllerSetupT {
  ControlKind kind = ControlKind::kPassive;
  PddVariant pdd_variant = PddVariant::kDissipativityConsistent;
  Scalar eps_v = Scalar(1e-4);
  HinfRuntimeT<Scalar> hinf;  // used only when kind == kHinf
};

using ControllerSetup = ControllerSetupT<double>;

namespace detail {

template <typename Scalar>
struct QuarterCarAdapter {
  const QuarterCarParamsT<Scalar>& p;
  using State = QuarterCarState<Scalar>;

  Index corners() const { return 1; }
  Index state_dim() const { return 4; }
  State zero_state() const { return State::Zero(); }

  State rhs(const State& x, const Vec<Scalar>& c, const Vec<Scalar>& xr) const {
    return quarter_car_rhs(p, x, c(0), xr(0));
  }
  Scalar body_accel(const State& deriv) const { return deriv(1); }
  Vec<Scalar> corner_accels(const State& deriv) const {
    return Vec<Scalar>::Constant(1, deriv(1));
  }
  Scalar deflection(const State& x, Index) const { return qc_deflection(x); }
  Scalar deflection_rate(const State& x, Index) const {
    return qc_deflection_rate(x);
  }
  Scalar c_min(Index) const { return p.c_min; }
  Scalar c_max(Index) const { return p.c_max; }
  Scalar c_passive(Index) const { return p.c_passive; }
  Scalar k_s(Index) const { return p.k_s; }
};

template <typename Scalar>
struct FullVehicleAdapter {
  const FullVehicleParamsT<Scalar>& p;
  using State = Vec<Scalar>;

  Index corners() const { return p.corners(); }
  Index state_dim() const { return full_vehicle_state_dim(p); }
  State zero_state() const { return State::Zero(state_dim()); }

  State rhs(const State& x, const Vec<Scalar>& c, const Vec<Scalar>& xr) const {
    return full_vehicle_rhs(p, x, c, xr);
  }
  Scalar body_accel(const State& deriv) const { return deriv(1); }
  Vec<Scalar> corner_accels(const State& deriv) const {
    return fv_corner_accels(p, deriv);
  }
  Scalar deflection(const State& x, Index i) const {
    return fv_corner_deflection(p, x, i);
  }
  Scalar deflection_rate(const State& x, Index i) const {
    return fv_corner_deflection_rate(p, x, i);
  }
  Scalar c_min(Index i) const { return p.c_min[static_cast<size_t>(i)]; }
  Scalar c_max(Index i) const { return p.c_max[static_cast<size_t>(i)]; }
  Scalar c_passive(Index i) const {
    return p.c_passive[static_cast<size_t>(i)];
  }
  Scalar k_s(Index i) const { return p.k_s[static_cast<size_t>(i)]; }
};

template <typename Scalar, typename Adapter>
TrajectoryT<Scalar> simulate(const Adapter& m, ControllerSetupT<Scalar> ctl,
                             const std::vector<RoadProfile>& roads,
                             const SimConfig& cfg) {
  cfg.validate();
  const Index nc = m.corners();
  require(static_cast<Index>(roads.size()) == nc, "argument-error",
          "one road profile required per corner");

  const Index steps =
      static_cast<Index>(std::floor(cfg.duration / cfg.dt + 1e-9));
  const Index samples = steps + 1;

  TrajectoryT<Scalar> traj;
  traj.time.resize(samples);
  traj.states.resize(samples, m.state_dim());
  traj.commands.resize(samples, nc);
  traj.forces.resize(samples, nc);
  traj.roads.resize(samples, nc);
  traj.defrates.resize(samples, nc);
  traj.accel.resize(samples);

  typename Adapter::State x = m.zero_state();
  Vec<Scalar> cmd(nc), cmd_prev(nc);
  for (Index i = 0; i < nc; ++i)
    cmd_prev(i) = ctl.kind == ControlKind::kAdd ? m.c_min(i) : m.c_passive(i);
  cmd = cmd_prev;

  const auto sample_roads = [&](Scalar t) {
    Vec<Scalar> r(nc);
    for (Index i = 0; i < nc; ++i)
      r(i) = roads[static_cast<size_t>(i)].sample(t);
    return r;
  };

  for (Index k = 0; k <= steps; ++k) {
    const Scalar t = Scalar(k) * cfg.dt;
    const Vec<Scalar> road_k = sample_roads(t);

    if (k % cfg.controller_period == 0) {
      switch (ctl.kind) {
        case ControlKind::kPassive:
          for (Index i = 0; i < nc; ++i) cmd(i) = m.c_passive(i);
          break;
        case ControlKind::kAdd: {
          // Acceleration as the model computes it at the current state
          // under the held (previous) command.
          const auto deriv = m.rhs(x, cmd_prev, road_k);
          const Vec<Scalar> a = m.corner_accels(deriv);
          for (Index i = 0; i < nc; ++i)
            cmd(i) = add_law(a(i), m.deflection_rate(x, i), m.c_min(i),
                             m.c_max(i))
                         .c_in;
          break;
        }
        case ControlKind::kPdd:
          for (Index i = 0; i < nc; ++i)
            cmd(i) = pdd_law_detailed(m.deflection(x, i),
                                      m.deflection_rate(x, i), m.k_s(i),
                                      m.c_min(i), m.c_max(i), ctl.pdd_variant)
                         .c_in;
          break;
        case ControlKind::kHinf: {
          const Vec<Scalar> f_req = ctl.hinf.force_request();
          for (Index i = 0; i < nc; ++i)
            cmd(i) = clip_damping(f_req(i), m.deflection_rate(x, i),
                                  m.c_min(i), m.c_max(i), ctl.eps_v)
                         .c_in;
          break;
        }
      }
    }

    const auto deriv = m.rhs(x, cmd, road_k);
    traj.time(k) = t;
    traj.states.row(k) = x.transpose();
    traj.commands.row(k) = cmd.transpose();
    traj.roads.row(k) = road_k.transpose();
    for (Index i = 0; i < nc; ++i) {
      const Scalar v = m.deflection_rate(x, i);
      traj.defrates(k, i) = v;
      traj.forces(k, i) = cmd(i) * v;
    }
    traj.accel(k) = m.body_accel(deriv);

    if (k < steps) {
      const auto rhs_fn = [&](const typename Adapter::State& xs, Scalar ts) {
        return m.rhs(xs, cmd, sample_roads(ts));
      };
      x = rk4_step(rhs_fn, x, t, cfg.dt);
      if (ctl.kind == ControlKind::kHinf)
        ctl.hinf.step(road_k, sample_roads(t + cfg.dt / 2),
                      sample_roads(t + cfg.dt), cfg.dt);
      cmd_prev = cmd;
    }
  }
  return traj;
}

}  // namespace detail

template <typename Scalar>
TrajectoryT<Scalar> run_quarter_car(const QuarterCarParamsT<Scalar>& p,
                                    ControllerSetupT<Scalar> controller,
                                    const RoadProfile& road,
                                    const SimConfig& cfg) {
  p.validate();
  return detail::simulate(detail::QuarterCarAdapter<Scalar>{p},
                          std::move(controller), {road}, cfg);
}

template <typename Scalar>
TrajectoryT<Scalar> run_full_vehicle(const FullVehicleParamsT<Scalar>& p,
                                     ControllerSetupT<Scalar> controller,
                                     const std::vector<RoadProfile>& roads,
                                     const SimConfig& cfg) {
  p.validate();
  return detail::simulate(detail::FullVehicleAdapter<Scalar>{p},
                          std::move(controller), roads, cfg);
}

}  // namespace sasim

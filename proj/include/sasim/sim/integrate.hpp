#pragma once

#include <string>

#include "sasim/common.hpp"

namespace sasim {

/// Classical fourth-order Runge-Kutta update. `rhs(x, t)` must return the
/// state derivative; inputs held by the functor are zero-order held over
/// the step by construction.
template <typename Scalar, typename State, typename Rhs>
State rk4_step(const Rhs& rhs, const State& x, Scalar t, Scalar dt) {
  require(dt > Scalar(0), "argument-error", "rk4_step: dt must be > 0");
  const State k1 = rhs(x, t);
  const State k2 = rhs(State(x + (dt / 2) * k1), t + dt / 2);
  const State k3 = rhs(State(x + (dt / 2) * k2), t + dt / 2);
  const State k4 = rhs(State(x + dt * k3), t + dt);
  State next = x + (dt / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
  require(next.allFinite(), "integration-divergence",
          "non-finite state at t=" + std::to_string(t + dt));
  return next;
}

}  // namespace sasim

#pragma once

#include <Eigen/Core>

#include <cmath>

#include "sasim/common.hpp"
#include "sasim/sim/simulate.hpp"

namespace sasim {

/// Root mean square over the whole (uniformly sampled) series.
template <typename Derived>
typename Derived::Scalar rms(const Eigen::MatrixBase<Derived>& signal) {
  require(signal.size() > 0, "argument-error", "rms: empty series");
  return std::sqrt(signal.array().square().mean());
}

/// Instantaneous damper-dissipated power, summed over corners:
/// P(t_k) = sum_i c_i(t_k) v_def,i(t_k)^2.
template <typename Scalar>
Vec<Scalar> instantaneous_power(const Mat<Scalar>& commands,
                                const Mat<Scalar>& defrates) {
  require(commands.rows() == defrates.rows() &&
              commands.cols() == defrates.cols(),
          "argument-error", "power: command/rate shape mismatch");
  return (commands.array() * defrates.array().square()).rowwise().sum();
}

/// Running time-average A(t) = (1/t) \int_0^t P, by trapezoidal
/// accumulation on the uniform grid; A(0) is defined as P(0).
template <typename Scalar>
Vec<Scalar> running_average(const Vec<Scalar>& time, const Vec<Scalar>& p) {
  require(time.size() == p.size() && time.size() > 0, "argument-error",
          "running_average: mismatched or empty series");
  Vec<Scalar> avg(p.size());
  avg(0) = p(0);
  Scalar integral = Scalar(0);
  for (Index k = 1; k < p.size(); ++k) {
    integral += Scalar(0.5) * (p(k) + p(k - 1)) * (time(k) - time(k - 1));
    avg(k) = integral / time(k);
  }
  return avg;
}

template <typename Scalar>
Vec<Scalar> absorbed_power_series(const TrajectoryT<Scalar>& traj) {
  return running_average<Scalar>(
      traj.time, instantaneous_power<Scalar>(traj.commands, traj.defrates));
}

/// Mean of the running-average series over the final `window` seconds.
template <typename Scalar>
Scalar absorbed_power_final(const Vec<Scalar>& series, const Vec<Scalar>& time,
                            Scalar window = Scalar(0.5)) {
  require(series.size() == time.size() && series.size() > 0, "argument-error",
          "absorbed_power_final: mismatched or empty series");
  const Scalar horizon = time(time.size() - 1) - time(0);
  require(horizon >= window, "argument-error",
          "absorbed_power_final: horizon shorter than the averaging window");
  const Scalar cutoff = time(time.size() - 1) - window - Scalar(1e-12);
  Scalar sum = Scalar(0);
  Index count = 0;
  for (Index k = 0; k < series.size(); ++k) {
    if (time(k) >= cutoff) {
      sum += series(k);
      ++count;
    }
  }
  return sum / Scalar(count);
}

/// Number of consecutive-sample jumps larger than `threshold` of the damper
/// range, summed over corners.
template <typename Scalar>
long switch_count(const Mat<Scalar>& commands, Scalar c_min, Scalar c_max,
                  Scalar threshold = Scalar(0.5)) {
  require(commands.rows() > 0, "argument-error", "switch_count: empty series");
  const Scalar jump = threshold * (c_max - c_min);
  long count = 0;
  for (Index i = 0; i < commands.cols(); ++i)
    for (Index k = 1; k < commands.rows(); ++k)
      if (std::abs(commands(k, i) - commands(k - 1, i)) > jump) ++count;
  return count;
}

template <typename Scalar>
struct MetricReportT {
  Scalar rms_accel = Scalar(0);
  Scalar absorbed_power_final = Scalar(0);
  long switch_count = 0;
};

using MetricReport = MetricReportT<double>;

/// Comfort metrics of one run: RMS of the logged vertical acceleration,
/// final running-average absorbed power, and command chattering count.
template <typename Scalar>
MetricReportT<Scalar> evaluate_metrics(const TrajectoryT<Scalar>& traj,
                                       Scalar c_min, Scalar c_max,
                                       Scalar window = Scalar(0.5),
                                       Scalar switch_threshold = Scalar(0.5)) {
  MetricReportT<Scalar> r;
  r.rms_accel = rms(traj.accel);
  r.absorbed_power_final =
      absorbed_power_final<Scalar>(absorbed_power_series(traj), traj.time,
                                   window);
  r.switch_count = switch_count<Scalar>(traj.commands, c_min, c_max,
                                        switch_threshold);
  return r;
}

}  // namespace sasim

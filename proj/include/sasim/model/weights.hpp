#pragma once

#include <utility>
#include <vector>

#include "sasim/common.hpp"
#include "sasim/lti/plant.hpp"

namespace sasim {

/// Synthesis tuning knobs. Flat (static) weights; all overridable from the
/// scenario config. `noise` scales the fictitious measurement-noise
/// channels that keep D21 full row rank. `road_shaping_bw` > 0 inserts a
/// first-order low-pass road model bw/(s+bw) per road channel into the
/// synthesis plant only, so the design stops fighting wheel-frequency road
/// content; 0 leaves the road input unshaped.
template <typename Scalar>
struct HinfDesignWeightsT {
  Scalar accel = Scalar(1);        // heave / sprung acceleration
  Scalar pitch_accel = Scalar(1);  // full vehicle only
  Scalar roll_accel = Scalar(1);   // full vehicle only
  Scalar control = Scalar(1e-4);
  Scalar noise = Scalar(1e-3);
  Scalar road_shaping_bw = Scalar(0);  // rad/s
};

using HinfDesignWeights = HinfDesignWeightsT<double>;

/// Everything the synthesizer and the runtime need about a vehicle model:
/// the weighted generalized plant (with noise channels and optional road
/// shaping) plus the bare internal-model realization driven by road input
/// and damper-force deviation u, and its clean measurement map.
template <typename Scalar>
struct SynthesisModelT {
  GeneralizedPlantT<Scalar> plant;
  Mat<Scalar> A;          // n x n, physical model
  Mat<Scalar> B_road;     // n x corners
  Mat<Scalar> B_u;        // n x corners
  Mat<Scalar> C_meas;     // measurements of the internal model (no noise)
  Mat<Scalar> D_meas_u;   // direct u term in those measurements
  Mat<Scalar> C_defrate;  // corners x n: per-corner deflection rate
  Vec<Scalar> c_nominal;  // per corner
};

using SynthesisModel = SynthesisModelT<double>;

namespace detail {

/// Weighted synthesis plant for a vehicle model in damper-force-deviation
/// form: w = [roads, one noise channel per measurement], u = force
/// deviations, z = [weighted acceleration rows, control-weighted u],
/// y = measurements + noise. `accel_channels` lists (state-derivative row,
/// weight) pairs that define the acceleration performance rows.
template <typename Scalar>
GeneralizedPlantT<Scalar> assemble_weighted_plant(
    const Mat<Scalar>& A, const Mat<Scalar>& B_road, const Mat<Scalar>& B_u,
    const Mat<Scalar>& C_meas, const Mat<Scalar>& D_meas_u,
    const std::vector<std::pair<Index, Scalar>>& accel_channels,
    const HinfDesignWeightsT<Scalar>& w) {
  const Index n = A.rows();
  const Index nr = B_road.cols();
  const Index nu = B_u.cols();
  const Index ny = C_meas.rows();
  const Index nz = static_cast<Index>(accel_channels.size()) + nu;
  const bool shaped = w.road_shaping_bw > Scalar(0);
  const Index N = shaped ? n + nr : n;
  const Index m1 = nr + ny;

  Mat<Scalar> Aa = Mat<Scalar>::Zero(N, N);
  Aa.topLeftCorner(n, n) = A;
  Mat<Scalar> B1 = Mat<Scalar>::Zero(N, m1);
  Mat<Scalar> B2 = Mat<Scalar>::Zero(N, nu);
  B2.topRows(n) = B_u;
  if (shaped) {
    Aa.block(0, n, n, nr) = B_road;
    Aa.block(n, n, nr, nr) =
        -w.road_shaping_bw * Mat<Scalar>::Identity(nr, nr);
    B1.block(n, 0, nr, nr) =
        w.road_shaping_bw * Mat<Scalar>::Identity(nr, nr);
  } else {
    B1.block(0, 0, n, nr) = B_road;
  }

  Mat<Scalar> C1 = Mat<Scalar>::Zero(nz, N);
  Mat<Scalar> D11 = Mat<Scalar>::Zero(nz, m1);
  Mat<Scalar> D12 = Mat<Scalar>::Zero(nz, nu);
  Index r = 0;
  for (const auto& [row, wi] : accel_channels) {
    C1.block(r, 0, 1, n) = wi * A.row(row);
    if (shaped)
      C1.block(r, n, 1, nr) = wi * B_road.row(row);
    else
      D11.block(r, 0, 1, nr) = wi * B_road.row(row);
    D12.row(r) = wi * B_u.row(row);
    ++r;
  }
  D12.bottomRows(nu) = w.control * Mat<Scalar>::Identity(nu, nu);

  Mat<Scalar> C2 = Mat<Scalar>::Zero(ny, N);
  C2.topLeftCorner(ny, n) = C_meas;
  Mat<Scalar> D21 = Mat<Scalar>::Zero(ny, m1);
  D21.rightCols(ny) = w.noise * Mat<Scalar>::Identity(ny, ny);

  return GeneralizedPlantT<Scalar>(Aa, B1, B2, C1, C2, D11, D12, D21,
                                   D_meas_u);
}

}  // namespace detail

}  // namespace sasim

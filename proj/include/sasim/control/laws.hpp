#pragma once

#include <cmath>

#include "sasim/common.hpp"
#include "sasim/model/quarter_car.hpp"

namespace sasim {

/// Per-corner damping command; always within [c_min, c_max] by construction
/// of every law below.
template <typename Scalar>
struct DamperCommandT {
  Scalar c_in;
};

using DamperCommand = DamperCommandT<double>;

/// Two-valued comfort law: soft when the sprung mass is being decelerated
/// by the damper anyway, stiff when a_s * v_def > 0. The boundary
/// a_s * v_def = 0 maps to c_min.
template <typename Scalar>
DamperCommandT<Scalar> add_law(Scalar a_s, Scalar v_def, Scalar c_min,
                               Scalar c_max) {
  return {a_s * v_def <= Scalar(0) ? c_min : c_max};
}

template <typename Scalar>
DamperCommandT<Scalar> add_law(Scalar a_s, Scalar v_def,
                               const QuarterCarParamsT<Scalar>& p) {
  return add_law(a_s, v_def, p.c_min, p.c_max);
}

enum class PddVariant {
  /// Branch conditions read with squared rate terms and c_max in the stiff
  /// branch, so the force-cancelling branch is reachable and the command is
  /// the clamp of -k_s x_def / v_def.
  kDissipativityConsistent,
  /// The published branch list evaluated verbatim, in order.
  kAsPrinted,
};

enum class PddBranch { kSoft, kStiff, kMidpoint, kCancel };

template <typename Scalar>
struct PddDecisionT {
  Scalar c_in;
  PddBranch branch;
};

template <typename Scalar>
PddDecisionT<Scalar> pdd_law_detailed(
    Scalar x_def, Scalar v_def, Scalar k_s, Scalar c_min, Scalar c_max,
    PddVariant variant = PddVariant::kDissipativityConsistent) {
  const Scalar drive = k_s * x_def * v_def;
  if (variant == PddVariant::kAsPrinted) {
    if (drive + c_min * v_def >= Scalar(0)) return {c_min, PddBranch::kSoft};
    if (drive + c_min * v_def < Scalar(0)) return {c_max, PddBranch::kStiff};
    if (x_def != Scalar(0) && v_def == Scalar(0))
      return {(c_min + c_max) / Scalar(2), PddBranch::kMidpoint};
    return {-k_s * x_def / v_def, PddBranch::kCancel};
  }
  // At v_def = 0 both rate conditions degenerate to 0; the midpoint case
  // must win there so the law stays centred while the spring is loaded.
  if (x_def != Scalar(0) && v_def == Scalar(0))
    return {(c_min + c_max) / Scalar(2), PddBranch::kMidpoint};
  if (drive + c_min * v_def * v_def >= Scalar(0))
    return {c_min, PddBranch::kSoft};
  if (drive + c_max * v_def * v_def <= Scalar(0))
    return {c_max, PddBranch::kStiff};
  // Remaining region: the cancelling coefficient lies strictly inside
  // (c_min, c_max) and makes k_s x_def + c v_def vanish (to rounding).
  return {-k_s * x_def / v_def, PddBranch::kCancel};
}

template <typename Scalar>
DamperCommandT<Scalar> pdd_law(
    Scalar x_def, Scalar v_def, const QuarterCarParamsT<Scalar>& p,
    PddVariant variant = PddVariant::kDissipativityConsistent) {
  return {pdd_law_detailed(x_def, v_def, p.k_s, p.c_min, p.c_max, variant)
              .c_in};
}

template <typename Scalar>
Scalar damper_force(const DamperCommandT<Scalar>& cmd, Scalar v_def) {
  return cmd.c_in * v_def;
}

/// Realize a requested damper force as a coefficient, clamped to the device
/// range. Below the rate deadband eps_v the damper cannot produce a
/// meaningful force and drops to c_min.
template <typename Scalar>
DamperCommandT<Scalar> clip_damping(Scalar f_req, Scalar v_def, Scalar c_min,
                                    Scalar c_max,
                                    Scalar eps_v = Scalar(1e-4)) {
  require(eps_v > Scalar(0), "argument-error", "eps_v must be > 0");
  if (std::abs(v_def) < eps_v) return {c_min};
  return {clamp(f_req / v_def, c_min, c_max)};
}

template <typename Scalar>
DamperCommandT<Scalar> clip_damping(Scalar f_req, Scalar v_def,
                                    const QuarterCarParamsT<Scalar>& p,
                                    Scalar eps_v = Scalar(1e-4)) {
  return clip_damping(f_req, v_def, p.c_min, p.c_max, eps_v);
}

template <typename Scalar>
DamperCommandT<Scalar> passive_law(const QuarterCarParamsT<Scalar>& p) {
  return {p.c_passive};
}

}  // namespace sasim

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <utility>
#include <variant>
#include <vector>

#include "sasim/common.hpp"
#include "sasim/model/full_vehicle.hpp"

namespace sasim {

namespace road {

struct Flat {};

struct Step {
  double height = 0.0;
  double start = 0.0;
};

struct HalfSineBump {
  double height = 0.0;
  double start = 0.0;
  double duration = 0.0;
};

/// Piecewise-linear table; elevation clamps to the end values inside
/// [t_first, t_last] and is zero before t = 0.
struct Table {
  std::vector<double> t;
  std::vector<double> elevation;
};

/// Sum of 64 seeded sinusoids with ISO 8608 style amplitude scaling
/// G(n) = gd * (n / n0)^-2, n0 = 0.1 cycles/m; fully determined by the seed.
struct Random {
  std::uint64_t seed = 1;
  double gd = 64e-6;  // roughness at n0, m^3 (class B)
  double speed = 10.0;
};

}  // namespace road

/// Roughness coefficient gd at n0 = 0.1 cycles/m for ISO 8608 classes
/// A..H (geometric class centers).
inline double iso8608_gd(char road_class) {
  switch (road_class) {
    case 'A': case 'a': return 16e-6;
    case 'B': case 'b': return 64e-6;
    case 'C': case 'c': return 256e-6;
    case 'D': case 'd': return 1024e-6;
    case 'E': case 'e': return 4096e-6;
    case 'F': case 'f': return 16384e-6;
    case 'G': case 'g': return 65536e-6;
    case 'H': case 'h': return 262144e-6;
    default:
      throw Error("argument-error", "unknown ISO 8608 class");
  }
}

class RoadProfile {
 public:
  using Variant =
      std::variant<road::Flat, road::Step, road::HalfSineBump, road::Table,
                   road::Random>;

  RoadProfile() : variant_(road::Flat{}) {}

  explicit RoadProfile(Variant v, double delay = 0.0)
      : variant_(std::move(v)), delay_(delay) {
    require(delay_ >= 0.0, "argument-error", "road delay must be >= 0");
    if (const auto* tbl = std::get_if<road::Table>(&variant_)) {
      require(!tbl->t.empty() && tbl->t.size() == tbl->elevation.size(),
              "argument-error", "road table must be nonempty and rectangular");
      for (size_t i = 1; i < tbl->t.size(); ++i)
        require(tbl->t[i] > tbl->t[i - 1], "argument-error",
                "road table times must be strictly increasing");
    }
    if (const auto* rnd = std::get_if<road::Random>(&variant_)) {
      require(rnd->gd > 0.0 && rnd->speed > 0.0, "argument-error",
              "random road needs positive roughness and speed");
      build_random_components(*rnd);
    }
  }

  static RoadProfile flat() { return RoadProfile(road::Flat{}); }
  static RoadProfile step(double height, double start) {
    return RoadProfile(road::Step{height, start});
  }
  static RoadProfile half_sine_bump(double height, double start,
                                    double duration) {
    require(duration > 0.0, "argument-error", "bump duration must be > 0");
    return RoadProfile(road::HalfSineBump{height, start, duration});
  }
  static RoadProfile table(std::vector<double> t, std::vector<double> e) {
    return RoadProfile(road::Table{std::move(t), std::move(e)});
  }
  static RoadProfile random(std::uint64_t seed, double gd, double speed) {
    return RoadProfile(road::Random{seed, gd, speed});
  }

  double delay() const { return delay_; }
  const Variant& variant() const { return variant_; }

  /// Same profile with an additional delay on top of the existing one.
  RoadProfile delayed_by(double extra) const {
    require(extra >= 0.0, "argument-error", "delay must be >= 0");
    RoadProfile out = *this;
    out.delay_ += extra;
    return out;
  }

  /// Elevation at time t; the underlying shape is evaluated at t - delay,
  /// with elevation 0 for a negative argument.
  double sample(double t) const {
    const double tau = t - delay_;
    if (tau < 0.0) return 0.0;
    return std::visit([&](const auto& v) { return eval(v, tau); }, variant_);
  }

 private:
  static double eval(const road::Flat&, double) { return 0.0; }

  static double eval(const road::Step& s, double t) {
    return t >= s.start ? s.height : 0.0;
  }

  static double eval(const road::HalfSineBump& b, double t) {
    if (t < b.start || t > b.start + b.duration) return 0.0;
    return b.height * std::sin(std::numbers::pi * (t - b.start) / b.duration);
  }

  static double eval(const road::Table& tbl, double t) {
    if (t <= tbl.t.front()) return tbl.elevation.front();
    if (t >= tbl.t.back()) return tbl.elevation.back();
    const auto it = std::upper_bound(tbl.t.begin(), tbl.t.end(), t);
    const size_t i = static_cast<size_t>(it - tbl.t.begin());
    const double w = (t - tbl.t[i - 1]) / (tbl.t[i] - tbl.t[i - 1]);
    return tbl.elevation[i - 1] +
           w * (tbl.elevation[i] - tbl.elevation[i - 1]);
  }

  double eval(const road::Random&, double t) const {
    double e = 0.0;
    for (const auto& [amp, omega, phase] : components_)
      e += amp * std::sin(omega * t + phase);
    return e;
  }

  void build_random_components(const road::Random& r) {
    // 64 log-spaced spatial frequencies over [0.011, 2.83] cycles/m
    // (wavelengths ~0.35 m to ~91 m), amplitude per band sqrt(2 G dn).
    constexpr int kBands = 64;
    constexpr double n_lo = 0.011, n_hi = 2.83, n0 = 0.1;
    std::mt19937_64 rng(r.seed);
    std::uniform_real_distribution<double> phase(0.0,
                                                 2.0 * std::numbers::pi);
    components_.reserve(kBands);
    const double ratio = std::pow(n_hi / n_lo, 1.0 / kBands);
    double a = n_lo;
    for (int k = 0; k < kBands; ++k) {
      const double b = a * ratio;
      const double n_mid = std::sqrt(a * b);
      const double g = r.gd * std::pow(n_mid / n0, -2.0);
      const double amp = std::sqrt(2.0 * g * (b - a));
      components_.push_back({amp, 2.0 * std::numbers::pi * n_mid * r.speed,
                             phase(rng)});
      a = b;
    }
  }

  Variant variant_;
  double delay_ = 0.0;
  std::vector<std::array<double, 3>> components_;  // amp, omega, phase
};

/// Per-corner profiles for a multi-axle vehicle travelling at `speed`:
/// corner (axle i, side s) sees the side-s profile delayed by the axle's
/// distance from the front axle divided by speed. Corner order matches
/// FullVehicleParams (left, right per axle).
inline std::vector<RoadProfile> per_axle_profiles(
    const RoadProfile& left, const RoadProfile& right,
    const FullVehicleParams& geometry, double speed) {
  require(speed > 0.0, "argument-error", "speed must be > 0");
  std::vector<RoadProfile> out;
  out.reserve(static_cast<size_t>(geometry.corners()));
  for (Index a = 0; a < geometry.axles(); ++a) {
    const double d =
        geometry.axle_from_front[static_cast<size_t>(a)] / speed;
    out.push_back(left.delayed_by(d));
    out.push_back(right.delayed_by(d));
  }
  return out;
}

}  // namespace sasim

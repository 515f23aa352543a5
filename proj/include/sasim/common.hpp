#pragma once

#include <Eigen/Core>

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sasim {

template <typename Scalar = double>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar = double>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar = double>
using CMat = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar = double>
using CVec = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

using Index = Eigen::Index;

/// Error with a stable machine-readable code ("care-unsolvable",
/// "plant-irregular", ...) in front of the human-readable message.
class Error : public std::runtime_error {
 public:
  Error(std::string_view code, const std::string& message)
      : std::runtime_error(std::string(code) + ": " + message),
        code_(code) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

inline void require(bool condition, std::string_view code,
                    const std::string& message) {
  if (!condition) throw Error(code, message);
}

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
  return m.allFinite();
}

template <typename Scalar>
bool is_finite(Scalar x) {
  return std::isfinite(static_cast<double>(x));
}

template <typename Scalar>
Scalar clamp(Scalar x, Scalar lo, Scalar hi) {
  return x < lo ? lo : (x > hi ? hi : x);
}

}  // namespace sasim

#pragma once

#include <random>

#include "sasim/common.hpp"
#include "sasim/lti/state_space.hpp"

namespace sasim::testing {

inline Mat<double> random_matrix(std::mt19937_64& rng, Index rows, Index cols,
                                 double scale = 1.0) {
  std::uniform_real_distribution<double> dist(-scale, scale);
  Mat<double> M(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) M(i, j) = dist(rng);
  return M;
}

/// Random Hurwitz matrix: shift a random matrix left of the imaginary axis.
inline Mat<double> random_stable_matrix(std::mt19937_64& rng, Index n,
                                        double margin = 0.2) {
  Mat<double> A = random_matrix(rng, n, n);
  const double alpha = spectral_abscissa<double>(A);
  A.diagonal().array() -= (alpha + margin);
  return A;
}

}  // namespace sasim::testing

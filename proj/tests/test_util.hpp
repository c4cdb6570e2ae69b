#pragma once

#include <cmath>

#include "qcoh/complex_matrix.hpp"
#include "qcoh/rng.hpp"
#include "qcoh/states.hpp"

namespace qcoh::test {

inline double max_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

inline double max_diff(const HermitianMatrix& a, const HermitianMatrix& b) {
  return max_diff(a.matrix(), b.matrix());
}

// General (not necessarily PSD) Hermitian matrix with N(0,1) parts.
inline HermitianMatrix random_hermitian(std::size_t d, Rng& rng) {
  ComplexMatrix g(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) g(i, j) = rng.complex_normal();
  ComplexMatrix h = g + g.adjoint();
  return HermitianMatrix::symmetrized(h, 1e-9);
}

inline DensityMatrix diag_density(const std::vector<double>& probs) {
  return DiagonalState::from(probs).embed();
}

}  // namespace qcoh::test

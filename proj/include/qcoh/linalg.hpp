#pragma once

#include <functional>
#include <vector>

#include "qcoh/complex_matrix.hpp"
#include "qcoh/tolerances.hpp"

namespace qcoh {

// Eigendecomposition H = U diag(eigenvalues) U^dag, eigenvalues ascending,
// eigenvectors in the columns of `eigenvectors`.
struct Spectrum {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;

  std::size_t dim() const { return eigenvalues.size(); }
  // U diag(values) U^dag for arbitrary replacement values.
  HermitianMatrix synthesize(const std::vector<double>& values) const;
};

// Cyclic complex Jacobi. Throws ConvergenceError (with the off-diagonal
// residual) if the sweep limit is exhausted, which does not happen for
// Hermitian input at these dimensions.
Spectrum eigh(const HermitianMatrix& h, int max_sweeps = 100);

// U f(lambda) U^dag with the pseudo-inverse support convention: f is applied
// only to eigenvalues with |lambda| > support_cutoff * max|lambda|; the rest
// map to 0. A non-finite f value on a retained eigenvalue is a DomainError.
HermitianMatrix matrix_function(const HermitianMatrix& h,
                                const std::function<double(double)>& f,
                                double support_cutoff = default_tolerances().support_cutoff);

// Support-restricted power H^p. Negative eigenvalues beyond the cutoff are a
// DomainError for non-integer p.
HermitianMatrix spectral_pow(const HermitianMatrix& h, double p,
                             double support_cutoff = default_tolerances().support_cutoff);

// Result of a Loewner-order test A <= B. When it fails, the most negative
// eigenvalue of B - A and its eigenvector are kept as a witness.
struct PsdOrder {
  bool holds = false;
  double min_eigenvalue = 0.0;
  std::vector<Complex> witness;
};

PsdOrder psd_order_leq(const HermitianMatrix& a, const HermitianMatrix& b, double tol);

}  // namespace qcoh

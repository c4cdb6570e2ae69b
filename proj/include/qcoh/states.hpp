#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qcoh/complex_matrix.hpp"
#include "qcoh/linalg.hpp"
#include "qcoh/rng.hpp"
#include "qcoh/tolerances.hpp"

namespace qcoh {

// Positive semidefinite, unit-trace Hermitian matrix.
class DensityMatrix {
 public:
  DensityMatrix() = default;

  // Validates PSD (min eigenvalue >= -tol.psd_min_eig) and unit trace.
  static DensityMatrix from(const HermitianMatrix& m,
                            const Tolerances& tol = default_tolerances());

  std::size_t dim() const { return mat_.dim(); }
  const HermitianMatrix& hermitian() const { return mat_; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return mat_(i, j); }

  double purity() const;

 private:
  explicit DensityMatrix(HermitianMatrix m) : mat_(std::move(m)) {}
  HermitianMatrix mat_;
};

// Probability vector over the reference basis; the incoherent states.
class DiagonalState {
 public:
  DiagonalState() = default;

  static DiagonalState from(std::vector<double> probs,
                            const Tolerances& tol = default_tolerances());
  static DiagonalState uniform(std::size_t d);

  std::size_t dim() const { return probs_.size(); }
  const std::vector<double>& probs() const { return probs_; }
  double operator[](std::size_t i) const { return probs_[i]; }

  DensityMatrix embed() const;

 private:
  std::vector<double> probs_;
};

struct BlochVector {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
  double norm() const;
};

// rho = (I + c1 X + c2 Y + c3 Z) / 2; pure exactly when |c| = 1.
DensityMatrix density_from_bloch(const BlochVector& c,
                                 const Tolerances& tol = default_tolerances());

// Projector onto (1/sqrt d) sum_j e^{i phase_j} |j>.
DensityMatrix maximally_coherent(std::size_t d, const std::vector<double>& phases);
DensityMatrix maximally_coherent(std::size_t d);

// Ginibre construction G G^dag / Tr(G G^dag) with G a d x rank complex
// standard-normal draw; deterministic per seed.
DensityMatrix random_density(std::size_t d, std::size_t rank, std::uint64_t seed);
DensityMatrix random_density(std::size_t d, std::size_t rank, Rng& rng);

// True when every off-diagonal modulus is at most tol.
bool is_incoherent(const DensityMatrix& rho, double tol);

// Explicit dephasing: keeps the diagonal, drops everything else.
DiagonalState dephase(const DensityMatrix& rho);

// Direct sum p rho1 (+) (1-p) rho2.
DensityMatrix block_diag(double p, const DensityMatrix& rho1, const DensityMatrix& rho2);

// Haar-like random unitary: QR of a Ginibre draw with phase-fixed diagonal.
ComplexMatrix random_unitary(std::size_t d, Rng& rng);

// State file format: {"dim": d, "re": [[...]], "im": [[...]]}, row-major.
DensityMatrix load_state_json(const std::string& path);
std::string state_to_json(const DensityMatrix& rho);
void save_state_json(const DensityMatrix& rho, const std::string& path);

}  // namespace qcoh

#pragma once

#include <vector>

#include "qcoh/linalg.hpp"
#include "qcoh/states.hpp"
#include "qcoh/tolerances.hpp"

namespace qcoh {

// Parameter of the Tsallis family. Each functional has its own admissible
// range; the factories below are the single place those ranges live.
struct EntropyParam {
  double q = 0.5;

  // T_q is defined for q in [0, 1); q = 0 is allowed here but rejected by the
  // coherence measures.
  static EntropyParam for_operator_entropy(double q);
  // D_q / C_q need q strictly inside (0, 1).
  static EntropyParam for_measure(double q);
  // The Tsallis relative alpha entropy takes q in (0, 2], q != 1.
  static EntropyParam for_alpha_entropy(double q);
};

// Deformed logarithm (x^{1-q} - 1) / (1 - q), q in [0, 1), x > 0.
double deformed_log(double x, double q);

// Tsallis relative operator entropy
//   T_q(rho||sigma) = rho^{1/2} ln_{1-q}(rho^{-1/2} sigma rho^{-1/2}) rho^{1/2}
// for PSD operators with supp(rho) <= supp(sigma); fractional powers use the
// support convention. Accepts unnormalized positive operators (homogeneity).
HermitianMatrix t_q_operator(const HermitianMatrix& rho, const HermitianMatrix& sigma,
                             double q, const Tolerances& tol = default_tolerances());

// f_q(rho, sigma) = Tr[rho^{1/2} (rho^{-1/2} sigma rho^{-1/2})^{1-q} rho^{1/2}].
double f_q(const DensityMatrix& rho, const DensityMatrix& sigma, double q,
           const Tolerances& tol = default_tolerances());

// D_q(rho||sigma) = (f_q^{1/q} - 1) / (q - 1), q in (0, 1).
double d_q(const DensityMatrix& rho, const DensityMatrix& sigma, double q,
           const Tolerances& tol = default_tolerances());

// Tsallis relative alpha entropy pieces: f~_q = Tr rho^q sigma^{1-q} and
// D~_q = (f~_q - 1) / (q - 1), q in (0, 2], q != 1. The q > 1 branch needs
// supp(rho) <= supp(sigma).
double tsallis_alpha_f(const DensityMatrix& rho, const DensityMatrix& sigma, double q,
                       const Tolerances& tol = default_tolerances());
double tsallis_alpha_entropy(const DensityMatrix& rho, const DensityMatrix& sigma,
                             double q, const Tolerances& tol = default_tolerances());

// Uhlmann fidelity [Tr (rho^{1/2} sigma rho^{1/2})^{1/2}]^2.
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma,
                const Tolerances& tol = default_tolerances());

// Checks supp(rho) <= supp(sigma): every eigenvector of rho above the support
// cutoff must lie in the range of sigma within tol.support_inclusion. Throws
// DomainError naming the offending eigenvector.
void require_support_inclusion(const Spectrum& rho_spec, const Spectrum& sigma_spec,
                               const Tolerances& tol = default_tolerances());

// Evaluators with the rho-dependent spectral data precomputed once. These are
// what the simplex optimizer calls thousands of times per measure; the probs
// argument is the diagonal of sigma and may be any nonnegative vector.
class FqEvaluator {
 public:
  FqEvaluator(const DensityMatrix& rho, double q, const Tolerances& tol = default_tolerances());
  double operator()(const std::vector<double>& probs) const;

 private:
  HermitianMatrix sqrt_rho_;
  HermitianMatrix inv_sqrt_rho_;
  double q_;
  Tolerances tol_;
};

class FidelityEvaluator {
 public:
  explicit FidelityEvaluator(const DensityMatrix& rho,
                             const Tolerances& tol = default_tolerances());
  double operator()(const std::vector<double>& probs) const;

 private:
  HermitianMatrix sqrt_rho_;
  Tolerances tol_;
};

class AlphaEvaluator {
 public:
  AlphaEvaluator(const DensityMatrix& rho, double q,
                 const Tolerances& tol = default_tolerances());
  // Tr rho^q diag(probs)^{1-q}; DomainError when q > 1 and a needed
  // probability vanishes.
  double operator()(const std::vector<double>& probs) const;

 private:
  HermitianMatrix rho_pow_q_;
  double q_;
  Tolerances tol_;
};

}  // namespace qcoh

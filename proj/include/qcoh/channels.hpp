#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qcoh/measures.hpp"
#include "qcoh/states.hpp"

namespace qcoh {

// Quantum channel in Kraus form: rho -> sum_n K_n rho K_n^dag with the
// completeness relation sum_n K_n^dag K_n = I.
class KrausChannel {
 public:
  static KrausChannel from(std::vector<ComplexMatrix> kraus,
                           const Tolerances& tol = default_tolerances());
  static KrausChannel identity(std::size_t d);
  // Projective dephasing {|i><i|}.
  static KrausChannel dephasing(std::size_t d);

  std::size_t dim_in() const { return dim_in_; }
  std::size_t dim_out() const { return dim_out_; }
  const std::vector<ComplexMatrix>& operators() const { return kraus_; }
  double completeness_residual() const;

 private:
  KrausChannel() = default;
  std::vector<ComplexMatrix> kraus_;
  std::size_t dim_in_ = 0;
  std::size_t dim_out_ = 0;
};

struct MeasurementBranch {
  double probability = 0.0;
  DensityMatrix state;
};

// Post-measurement ensemble; branches below the prune threshold are dropped
// and the remaining mass renormalized.
struct MeasurementEnsemble {
  std::vector<MeasurementBranch> branches;
};

DensityMatrix apply_channel(const KrausChannel& phi, const DensityMatrix& rho,
                            const Tolerances& tol = default_tolerances());

// Same map on an arbitrary Hermitian operator (no density validation); used
// by the unital-map property checks.
HermitianMatrix apply_to_hermitian(const KrausChannel& phi, const HermitianMatrix& h);

// Mixture of random unitaries sqrt(w_i) U_i: unital and trace preserving.
KrausChannel random_unitary_mixture(std::size_t d, std::size_t n_unitaries, Rng& rng,
                                    const Tolerances& tol = default_tolerances());

MeasurementEnsemble selective_measure(const KrausChannel& phi, const DensityMatrix& rho,
                                      const Tolerances& tol = default_tolerances());

// Structural criterion: every Kraus operator has at most one entry above tol
// per column, which forces diagonal states to diagonal (unnormalized) states.
bool is_incoherent_channel(const KrausChannel& phi, double tol);

// K_n = D_n P_n with random permutations and complex diagonals, rescaled per
// column so completeness holds exactly.
KrausChannel random_incoherent_channel(std::size_t d, std::size_t n_kraus, Rng& rng,
                                       const Tolerances& tol = default_tolerances());
KrausChannel random_incoherent_channel(std::size_t d, std::size_t n_kraus,
                                       std::uint64_t seed,
                                       const Tolerances& tol = default_tolerances());

// Stinespring construction: a random isometry split into env_dim blocks.
KrausChannel random_cptp_channel(std::size_t d, std::size_t env_dim, Rng& rng,
                                 const Tolerances& tol = default_tolerances());
KrausChannel random_cptp_channel(std::size_t d, std::size_t env_dim, std::uint64_t seed,
                                 const Tolerances& tol = default_tolerances());

struct InequalityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

// CPTP monotonicity of f_q: f_q(Phi(rho), Phi(sigma)) >= f_q(rho, sigma).
InequalityCheck check_lemma2(const DensityMatrix& rho, const DensityMatrix& sigma,
                             const KrausChannel& phi, double q,
                             const Tolerances& tol = default_tolerances());

// Ensemble inequality: f_q(rho, sigma) <= sum_n p_n^q q_n^{1-q} f_q(rho_n, sigma_n).
InequalityCheck check_lemma3(const DensityMatrix& rho, const DensityMatrix& sigma,
                             const KrausChannel& phi, double q,
                             const Tolerances& tol = default_tolerances());

struct MonotonicityCheck {
  double average = 0.0;
  double total = 0.0;
  bool holds = false;
};

// Strong monotonicity of C_q under a selective incoherent measurement:
// sum_n p_n C_q(rho_n) <= C_q(rho). Throws unless phi is incoherent.
MonotonicityCheck check_strong_monotonicity(const DensityMatrix& rho,
                                            const KrausChannel& phi, double q,
                                            const OptimizerConfig& cfg = {},
                                            const Tolerances& tol = default_tolerances());

struct AlphaViolation {
  std::size_t trial = 0;
  DensityMatrix rho;
  KrausChannel channel;
  double average = 0.0;
  double total = 0.0;
};

// Seeded search for a strong-monotonicity violation of the Tsallis-alpha
// coherence. Returns the first counterexample, or nullopt when the finite
// search finds none (which is not a disproof).
std::optional<AlphaViolation> find_tsallis_alpha_violation(
    std::size_t d, double q, std::size_t trials, std::uint64_t seed,
    const OptimizerConfig& cfg = {}, const Tolerances& tol = default_tolerances());

}  // namespace qcoh

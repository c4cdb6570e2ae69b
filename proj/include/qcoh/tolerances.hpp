#pragma once

namespace qcoh {

// Central tolerance record. The defaults below are normative: every check in
// the library reads them from here instead of hard-coding its own constant.
struct Tolerances {
  // Maximum relative asymmetry accepted when symmetrizing a Hermitian matrix.
  double herm = 1e-12;
  // Eigendecomposition quality: reconstruction and unitarity residuals.
  double spectrum_residual = 1e-10;
  // Spectral support cutoff, relative to the largest |eigenvalue|.
  double support_cutoff = 1e-10;
  // Projector residual allowed by the support-inclusion check supp(rho) <= supp(sigma).
  double support_inclusion = 1e-8;
  // Largest imaginary residue tolerated on traces that must be real.
  double trace_imag = 1e-10;
  // Density matrix invariants: minimum eigenvalue and trace deviation.
  double psd_min_eig = 1e-10;
  double trace_one = 1e-10;
  // Probability vectors must sum to one within this.
  double prob_sum = 1e-12;
  // Kraus completeness residual, max-abs norm.
  double kraus_completeness = 1e-10;
  // Measurement branches below this probability are dropped and mass renormalized.
  double branch_prune = 1e-12;
  // Loewner-order comparisons in the property suites.
  double loewner = 1e-9;
  // Off-diagonal modulus below which a state counts as incoherent.
  double incoherent = 1e-9;
  // Margin for the lemma inequality checks (lhs <= rhs + margin).
  double lemma_margin = 1e-9;
  // Strong monotonicity margin; widened to absorb two optimizer errors.
  double strong_mono_margin = 1e-7;
  // Excess required before a strong-monotonicity violation counts as found.
  double alpha_violation_margin = 1e-6;
};

inline const Tolerances& default_tolerances() {
  static const Tolerances tol{};
  return tol;
}

}  // namespace qcoh

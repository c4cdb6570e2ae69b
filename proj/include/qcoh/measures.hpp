#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "qcoh/entropy.hpp"
#include "qcoh/states.hpp"

namespace qcoh {

// Knobs of the simplex maximizer. Defaults are normative for the CLI and the
// verification suites.
struct OptimizerConfig {
  int restarts = 8;
  int max_iters = 500;
  double grad_step = 1e-6;     // central finite-difference step
  double conv_tol = 1e-9;      // stop when per-iteration gain falls below this
  double prob_floor = 1e-12;   // final probabilities are floored and renormalized
  int grid_points = 2001;      // resolution of the d=2 grid oracle
  std::uint64_t seed = 0;      // seeds the Dirichlet restarts
};

// Outcome of one measure evaluation: the value, the optimal incoherent state,
// and optimizer diagnostics.
struct MeasureReport {
  double value = 0.0;
  DiagonalState optimal_sigma;
  double q = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> objective_history;
};

// Objective over probability vectors. May be evaluated slightly off-simplex
// (finite differences); returns -inf for infeasible points.
using SimplexObjective = std::function<double(const std::vector<double>&)>;

struct SimplexOptimum {
  std::vector<double> probs;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> history;
};

// Euclidean projection onto the probability simplex.
std::vector<double> project_to_simplex(std::vector<double> x);

// Projected-gradient ascent with central finite-difference gradients,
// backtracking line search and multistart (uniform + extra_starts + seeded
// Dirichlet draws, cfg.restarts starts in total).
SimplexOptimum optimize_over_simplex(const SimplexObjective& objective, std::size_t dim,
                                     const OptimizerConfig& cfg,
                                     const std::vector<std::vector<double>>& extra_starts = {});

// Exhaustive scan over [0,1] for two-dimensional problems; the independent
// oracle the optimizer is checked against.
SimplexOptimum grid_scan_d2(const SimplexObjective& objective, int grid_points);

// C_q(rho) = min over incoherent sigma of D_q(rho||sigma), realized as
// maximization of f_q; q in (0, 1).
MeasureReport c_q(const DensityMatrix& rho, double q, const OptimizerConfig& cfg = {},
                  const Tolerances& tol = default_tolerances());

// Closed-form maximum (d^{(q-1)/q} - 1) / (q - 1) attained by the maximally
// coherent state.
double c_q_max(std::size_t d, double q);

// The q = 1/2 member through its dedicated formula 2(1 - f*^2).
MeasureReport c_half(const DensityMatrix& rho, const OptimizerConfig& cfg = {},
                     const Tolerances& tol = default_tolerances());

// C_g(rho) = 1 - max over incoherent sigma of the Uhlmann fidelity.
MeasureReport geometric_coherence(const DensityMatrix& rho, const OptimizerConfig& cfg = {},
                                  const Tolerances& tol = default_tolerances());

// Coherence from the Tsallis relative alpha entropy, q in (0, 2] \ {1}.
// Violates strong monotonicity (see channels::find_tsallis_alpha_violation).
MeasureReport tsallis_alpha_coherence(const DensityMatrix& rho, double q,
                                      const OptimizerConfig& cfg = {},
                                      const Tolerances& tol = default_tolerances());

// Baselines: sum of off-diagonal moduli, and S(diag rho) - S(rho) with the
// von Neumann entropy in base 2.
double l1_coherence(const DensityMatrix& rho);
double rel_entropy_coherence(const DensityMatrix& rho,
                             const Tolerances& tol = default_tolerances());

}  // namespace qcoh

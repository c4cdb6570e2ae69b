#include "qcoh/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "qcoh/channels.hpp"
#include "qcoh/entropy.hpp"
#include "qcoh/errors.hpp"

namespace qcoh {

namespace {

// Per-trial verdict. margin >= 0 is a pass; note describes a failure.
struct Trial {
  double margin = 0.0;
  std::string note;
};

using TrialBody = std::function<Trial(std::size_t, Rng&)>;

constexpr std::size_t kMaxDumps = 5;

SuiteResult run_suite(const std::string& name, std::size_t trials, const TrialBody& body,
                      const VerifyOptions& opts, bool hard = true) {
  // Suite name is folded into the stream so suites draw independent randomness.
  std::uint64_t suite_seed = opts.seed;
  for (char c : name) suite_seed = suite_seed * 1099511628211ULL + static_cast<unsigned char>(c);

  const TrialBody guarded = [&body](std::size_t i, Rng& rng) -> Trial {
    try {
      return body(i, rng);
    } catch (const Error& e) {
      return {-1.0, std::string("exception: ") + e.what()};
    }
  };
  const std::vector<Trial> outcomes =
      run_trials<Trial>(trials, guarded, suite_seed, opts.mode);

  SuiteResult res;
  res.name = name;
  res.hard = hard;
  res.trials = trials;
  res.worst_margin = trials == 0 ? 0.0 : std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const Trial& t = outcomes[i];
    res.worst_margin = std::min(res.worst_margin, t.margin);
    if (t.margin >= 0.0) {
      ++res.passes;
    } else if (res.counterexamples.size() < kMaxDumps) {
      res.counterexamples.push_back(
          {{"trial", i}, {"margin", t.margin}, {"detail", t.note}});
    }
  }
  res.passed = !hard || res.passes == res.trials;
  return res;
}

std::string describe(const char* what, double lhs, double rhs) {
  std::ostringstream os;
  os.precision(17);
  os << what << ": lhs=" << lhs << " rhs=" << rhs;
  return os.str();
}

double scaled(std::size_t base, std::size_t reference_trials) {
  return static_cast<double>(base) * static_cast<double>(reference_trials) / 200.0;
}

std::size_t count(std::size_t per200, const VerifyOptions& opts) {
  return static_cast<std::size_t>(std::llround(scaled(per200, opts.base_trials)));
}

DensityMatrix random_pure_qubit(Rng& rng, BlochVector* out_c = nullptr) {
  double c[3];
  double nrm = 0.0;
  for (auto& ci : c) {
    ci = rng.normal();
    nrm += ci * ci;
  }
  nrm = std::sqrt(nrm);
  BlochVector b{c[0] / nrm, c[1] / nrm, c[2] / nrm};
  if (out_c) *out_c = b;
  return density_from_bloch(b);
}

DensityMatrix random_full_rank_qubit(Rng& rng, double max_radius) {
  double c[3];
  double nrm = 0.0;
  for (auto& ci : c) {
    ci = rng.normal();
    nrm += ci * ci;
  }
  nrm = std::sqrt(nrm);
  const double r = max_radius * std::pow(rng.uniform(), 1.0 / 3.0);
  return density_from_bloch({r * c[0] / nrm, r * c[1] / nrm, r * c[2] / nrm});
}

// ---------------------------------------------------------------------------
// Closed forms and scalar inequalities
// ---------------------------------------------------------------------------

SuiteResult suite_maximal_closed_form(const VerifyOptions& opts) {
  const std::size_t n = opts.base_trials == 0 ? 0 : 45;  // d in 2..6 x q in .1...9
  return run_suite(
      "maximal_coherence_closed_form", n,
      [&](std::size_t i, Rng& rng) -> Trial {
        const std::size_t d = 2 + i / 9;
        const double q = 0.1 * static_cast<double>(1 + i % 9);
        std::vector<double> phases(d);
        for (auto& ph : phases) ph = rng.uniform(0.0, 2.0 * std::numbers::pi);
        OptimizerConfig cfg = opts.optimizer;
        const double value = c_q(maximally_coherent(d, phases), q, cfg, opts.tol).value;
        const double expected = c_q_max(d, q);
        const double err = std::abs(value - expected);
        return {1e-6 - err, describe("closed form mismatch", value, expected)};
      },
      opts);
}

SuiteResult suite_deformed_log_sandwich(const VerifyOptions& opts) {
  return run_suite(
      "deformed_log_sandwich", count(10000, opts),
      [&](std::size_t, Rng& rng) -> Trial {
        const double x = rng.uniform(1e-6, 10.0);
        const double q = rng.uniform(1e-9, 1.0 - 1e-9);
        const double ln = deformed_log(x, q);
        const double lower = (ln - (1.0 - 1.0 / x)) + 1e-12;
        const double upper = ((x - 1.0) - ln) + 1e-12;
        return {std::min(lower, upper), describe("bby sandwich", x, q)};
      },
      opts);
}

SuiteResult suite_hoelder_step(const VerifyOptions& opts) {
  return run_suite(
      "hoelder_step", count(10000, opts),
      [&](std::size_t, Rng& rng) -> Trial {
        const std::size_t n = 2 + rng.uniform_index(5);
        const std::vector<double> p = rng.dirichlet(n);
        const std::vector<double> qv = rng.dirichlet(n);
        const double q = rng.uniform(0.05, 0.95);
        double qsum = 0.0, psum = 0.0, rhs = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double f = rng.uniform(0.01, 1.0);
          qsum += qv[k];
          psum += p[k] * std::pow(f, 1.0 / q);
          rhs += std::pow(p[k], q) * std::pow(qv[k], 1.0 - q) * f;
        }
        const double lhs = std::pow(qsum, 1.0 - q) * std::pow(psum, q);
        return {lhs - rhs + 1e-12, describe("hoelder", lhs, rhs)};
      },
      opts);
}

// ---------------------------------------------------------------------------
// Lemma 1 and the T_q property suite
// ---------------------------------------------------------------------------

SuiteResult suite_lemma1_sandwich(const VerifyOptions& opts) {
  return run_suite(
      "lemma1_sandwich", count(1000, opts),
      [&](std::size_t i, Rng& rng) -> Trial {
        const std::size_t d = 2 + i % 3;  // 2, 3, 4
        const DensityMatrix rho = random_density(d, d, rng);
        const DensityMatrix sigma = random_density(d, d, rng);
        double margin = std::numeric_limits<double>::infinity();
        std::string worst;
        for (double q : {0.2, 0.5, 0.8}) {
          const HermitianMatrix t = t_q_operator(rho.hermitian(), sigma.hermitian(), q, opts.tol);
          const HermitianMatrix sigma_inv = spectral_pow(sigma.hermitian(), -1.0);
          const ComplexMatrix lowc = rho.hermitian().matrix() -
                                     rho.hermitian().matrix() * sigma_inv.matrix() *
                                         rho.hermitian().matrix();
          const HermitianMatrix low = HermitianMatrix::symmetrized(lowc, 1e-9);
          const HermitianMatrix high = sigma.hermitian() - rho.hermitian();
          const double m1 = psd_order_leq(low, t, 1e-9).min_eigenvalue + 1e-9;
          const double m2 = psd_order_leq(t, high, 1e-9).min_eigenvalue + 1e-9;
          if (std::min(m1, m2) < margin) {
            margin = std::min(m1, m2);
            worst = describe("lemma1 sandwich at q", q, margin);
          }
        }
        // Zero characterization: T_q(rho||rho) vanishes.
        const double self = t_q_operator(rho.hermitian(), rho.hermitian(), 0.5, opts.tol).max_abs();
        if (1e-10 - self < margin) {
          margin = 1e-10 - self;
          worst = describe("T_q(rho||rho) nonzero", self, 0.0);
        }
        return {margin, worst};
      },
      opts);
}

SuiteResult suite_tq_homogeneity(const VerifyOptions& opts) {
  return run_suite(
      "tq_homogeneity", count(200, opts),
      [&](std::size_t i, Rng& rng) -> Trial {
        const std::size_t d = opts.dims[i % opts.dims.size()];
        const double q = rng.uniform(0.05, 0.95);
        // Unnormalized positive operators.
        const HermitianMatrix a = (0.4 + rng.uniform()) * random_density(d, d, rng).hermitian();
        const HermitianMatrix b = (0.4 + rng.uniform()) * random_density(d, d, rng).hermitian();
        const HermitianMatrix t = t_q_operator(a, b, q, opts.tol);
        double resid = 0.0;
        for (double alpha : {0.5, 2.0}) {
          const HermitianMatrix scaled_t = t_q_operator(alpha * a, alpha * b, q, opts.tol);
          resid = std::max(resid, (scaled_t - alpha * t).max_abs());
        }
        return {1e-9 - resid, describe("homogeneity residual", resid, 1e-9)};
      },
      opts);
}

SuiteResult suite_tq_monotonicity(const VerifyOptions& opts) {
  return run_suite(
      "tq_monotonicity", count(200, opts),
      [&](std::size_t i, Rng& rng) -> Trial {
        const std::size_t d = opts.dims[i % opts.dims.size()];
        const double q = rng.uniform(0.05, 0.95);
        const DensityMatrix rho = random_density(d, d, rng);
        const HermitianMatrix sigma = random_density(d, d, rng).hermitian();
        const HermitianMatrix bump = rng.uniform(0.05, 0.5) * random_density(d, d, rng).hermitian();
        const HermitianMatrix tau = sigma + bump;
        const HermitianMatrix t_sigma = t_q_operator(rho.hermitian(), sigma, q, opts.tol);
        const HermitianMatrix t_tau = t_q_operator(rho.hermitian(), tau, q, opts.tol);
        const double m = psd_order_leq(t_sigma, t_tau, 1e-9).min_eigenvalue + 1e-9;
        return {m, describe("monotonicity in sigma", m, 0.0)};
      },
      opts);
}

SuiteResult suite_tq_superadditivity(const VerifyOptions& opts) {
  return run_suite(
      "tq_superadditivity", count(200, opts),
      [&](std::size_t i, Rng& rng) -> Trial {
        const std::size_t d = opts.dims[i % opts.dims.size()];
        const double q = rng.uniform(0.05, 0.95);
        const HermitianMatrix r1 = random_density(d, d, rng).hermitian();
        const HermitianMatrix r2 = random_density(d, d, rng).hermitian();
        const HermitianMatrix s1 = random_density(d, d, rng).hermitian();
        const HermitianMatrix s2 = random_density(d, d, rng).hermitian();
        const HermitianMatrix whole = t_q_operator(r1 + r2, s1 + s2, q, opts.tol);
        const HermitianMatrix parts =
            t_q_operator(r1, s1, q, opts.tol) + t_q_operator(r2, s2, q, opts.tol);
        const double m = psd_order_leq(parts, whole, 1e-9).min_eigenvalue + 1e-9;
        return {m, describe("superadditivity", m, 0.0)};
      },
      opts);
}

SuiteResult suite_tq_joint_concavity(const VerifyOptions& opts) {
  return run_suite(
      "tq_joint_concavity", count(200, opts),
      [&](std::size_t i, Rng& rng) -> Trial {
        const std::size_t d = opts.dims[i % opts.dims.size()];
        const double q = rng.uniform(0.05, 0.95);
        const double alpha = rng.uniform(0.1, 0.9);
        const double beta = 1.0 - alpha;
        const HermitianMatrix r1 = random_density(d, d, rng).hermitian();
        const HermitianMatrix r2 = random_density(d, d, rng).hermitian();
        const HermitianMatrix s1 = random_density(d, d, rng).hermitian();
        const HermitianMatrix s2 = random_density(d, d, rng).hermitian();
        const HermitianMatrix mix =
            t_q_operator(alpha * r1 + beta * r2, alpha * s1 + beta * s2, q, opts.tol);
        const HermitianMatrix parts =
            alpha * t_q_operator(r1, s1, q, opts.tol) + beta * t_q_operator(r2, s2, q, opts.tol);
        const double m = psd_order_leq(parts, mix, 1e-9).min_eigenvalue + 1e-9;
        return {m, describe("joint concavity", m, 0.0)};
      },
      opts);
}

SuiteResult suite_tq_unitary_invariance(const VerifyOptions& opts) {
  return run_suite(
      "tq_unitary_invariance", count(200, opts),
      [&](std::size_t i, Rng& rng) -> Trial {
        const std::size_t d = opts.dims[i % opts.dims.size()];
        const double q = rng.uniform(0.05, 0.95);
        const DensityMatrix rho = random_density(d, d, rng);
        const DensityMatrix sigma = random_density(d, d, rng);
        const ComplexMatrix u = random_unitary(d, rng);
        const auto rotate = [&u](const HermitianMatrix& h) {
          return HermitianMatrix::symmetrized(u * h.matrix() * u.adjoint(), 1e-9);
        };
        const HermitianMatrix lhs =
            t_q_operator(rotate(rho.hermitian()), rotate(sigma.hermitian()), q, opts.tol);
        const HermitianMatrix rhs =
            rotate(t_q_operator(rho.hermitian(), sigma.hermitian(), q, opts.tol));
        const double resid = (lhs - rhs).max_abs();
        return {1e-9 - resid, describe("unitary invariance residual", resid, 1e-9)};
      },
      opts);
}

SuiteResult suite_tq_unital_trace(const VerifyOptions& opts) {
  return run_suite(
      "tq_unital_trace_inequality", count(200, opts),
      [&](std::size_t i, Rng& rng) -> Trial {
        const std::size_t d = opts.dims[i % opts.dims.size()];
        const double q = rng.uniform(0.05, 0.95);
        const DensityMatrix rho = random_density(d, d, rng);
        const DensityMatrix sigma = random_density(d, d, rng);
        const KrausChannel phi = (i % 2 == 0)
                                     ? KrausChannel::dephasing(d)
                                     : random_unitary_mixture(d, 2 + rng.uniform_index(2), rng, opts.tol);
        const HermitianMatrix t = t_q_operator(rho.hermitian(), sigma.hermitian(), q, opts.tol);
        const double lhs = apply_to_hermitian(phi, t).trace();
        const double rhs = t_q_operator(apply_channel(phi, rho, opts.tol).hermitian(),
                                        apply_channel(phi, sigma, opts.tol).hermitian(), q,
                                        opts.tol)
                               .trace();
        return {rhs - lhs + 1e-9, describe("unital trace inequality", lhs, rhs)};
      },
      opts);
}

SuiteResult suite_fq_tq_consistency(const VerifyOptions& opts) {
  return run_suite(
      "fq_tq_consistency", count(200, opts),
      [&](std::size_t i, Rng& rng) -> Trial {
        const std::size_t d = opts.dims[i % opts.dims.size()];
        const double q = rng.uniform(0.05, 0.95);
        const DensityMatrix rho = random_density(d, d, rng);
        const DensityMatrix sigma = random_density(d, d, rng);
        const double direct = f_q(rho, sigma, q, opts.tol);
        const double via_tq =
            1.0 + (1.0 - q) * t_q_operator(rho.hermitian(), sigma.hermitian(), q, opts.tol).trace();
        const double err = std::abs(direct - via_tq);
        double margin = 1e-10 - err;
        // Traced Lemma-1 upper bound: f_q <= 1 for density pairs.
        margin = std::min(margin, 1.0 + 1e-10 - direct);
        return {margin, describe("f_q vs 1+(1-q)TrT_q", direct, via_tq)};
      },
      opts);
}

// ---------------------------------------------------------------------------
// Fidelity suites
// ---------------------------------------------------------------------------

SuiteResult suite_pure_qubit_fidelity(const VerifyOptions& opts) {
  return run_suite(
      "pure_qubit_fidelity_formula", count(100, opts),
      [&](std::size_t, Rng& rng) -> Trial {
        BlochVector c;
        const DensityMatrix rho = random_pure_qubit(rng, &c);
        const double p1 = rng.uniform();
        const DensityMatrix sigma = DiagonalState::from({p1, 1.0 - p1}).embed();
        const double expected = 0.5 * (1.0 + c.c3) * p1 + 0.5 * (1.0 - c.c3) * (1.0 - p1);
        const double err = std::abs(fidelity(rho, sigma, opts.tol) - expected);
        return {1e-9 - err, describe("pure qubit fidelity", err, expected)};
      },
      opts);
}

SuiteResult suite_fidelity_properties(const VerifyOptions& opts) {
  return run_suite(
      "fidelity_symmetry_unitary", count(200, opts),
      [&](std::size_t i, Rng& rng) -> Trial {
        const std::size_t d = opts.dims[i % opts.dims.size()];
        const DensityMatrix rho = random_density(d, d, rng);
        const DensityMatrix sigma = random_density(d, d, rng);
        const double f = fidelity(rho, sigma, opts.tol);
        const double sym = std::abs(f - fidelity(sigma, rho, opts.tol));
        const ComplexMatrix u = random_unitary(d, rng);
        const auto rotate = [&](const DensityMatrix& x) {
          return DensityMatrix::from(
              HermitianMatrix::symmetrized(u * x.hermitian().matrix() * u.adjoint(), 1e-9));
        };
        const double inv = std::abs(f - fidelity(rotate(rho), rotate(sigma), opts.tol));
        return {1e-9 - std::max(sym, inv), describe("fidelity symmetry/unitary", sym, inv)};
      },
      opts);
}

SuiteResult suite_alt_inequality(const VerifyOptions& opts) {
  return run_suite(
      "alt_inequality", count(1000, opts),
      [&](std::size_t i, Rng& rng) -> Trial {
        const std::size_t d = 2 + i % 3;
        const DensityMatrix rho = random_density(d, d, rng);
        const DensityMatrix sigma = random_density(d, d, rng);
        const double f = f_q(rho, sigma, 0.5, opts.tol);
        const double fid = fidelity(rho, sigma, opts.tol);
        return {fid - f * f + 1e-10, describe("ALT f_half^2 vs F", f * f, fid)};
      },
      opts);
}

// ---------------------------------------------------------------------------
// Measure-level suites (axioms and bounds)
// ---------------------------------------------------------------------------

double cq_value(const DensityMatrix& rho, double q, const VerifyOptions& opts) {
  return c_q(rho, q, opts.optimizer, opts.tol).value;
}

SuiteResult suite_c1_faithfulness(const VerifyOptions& opts) {
  return run_suite(
      "c1_faithfulness", count(200, opts) * opts.dims.size(),
      [&](std::size_t i, Rng& rng) -> Trial {
        const std::size_t d = opts.dims[i % opts.dims.size()];
        const double q = rng.uniform(0.1, 0.9);
        double margin = std::numeric_limits<double>::infinity();
        std::string note;
        // Coherent sample: value must clear the zero threshold.
        const DensityMatrix rho = random_density(d, d, rng);
        if (!is_incoherent(rho, opts.tol.incoherent)) {
          const double v = cq_value(rho, q, opts);
          margin = v - 1e-8;
          note = describe("coherent state scored zero", v, 1e-8);
        }
        // Incoherent samples: a random diagonal state and the dephased draw.
        for (const DiagonalState& diag :
             {DiagonalState::from(rng.dirichlet(d)), dephase(rho)}) {
          const double v = cq_value(diag.embed(), q, opts);
          if (1e-8 - v < margin) {
            margin = 1e-8 - v;
            note = describe("incoherent state scored nonzero", v, 1e-8);
          }
        }
        return {margin, note};
      },
      opts);
}

SuiteResult suite_c2_monotonicity(const VerifyOptions& opts) {
  return run_suite(
      "c2_monotonicity", count(200, opts) * opts.dims.size(),
      [&](std::size_t i, Rng& rng) -> Trial {
        const std::size_t d = opts.dims[i % opts.dims.size()];
        const double q = rng.uniform(0.1, 0.9);
        const DensityMatrix rho = random_density(d, d, rng);
        const KrausChannel phi =
            random_incoherent_channel(d, 1 + rng.uniform_index(d), rng, opts.tol);
        const double before = cq_value(rho, q, opts);
        const double after = cq_value(apply_channel(phi, rho, opts.tol), q, opts);
        return {before - after + opts.tol.strong_mono_margin,
                describe("C2 monotonicity", after, before)};
      },
      opts);
}

SuiteResult suite_c3_strong_monotonicity(const VerifyOptions& opts) {
  return run_suite(
      "c3_strong_monotonicity", count(200, opts) * opts.dims.size(),
      [&](std::size_t i, Rng& rng) -> Trial {
        const std::size_t d = opts.dims[i % opts.dims.size()];
        const double q = rng.uniform(0.1, 0.9);
        const DensityMatrix rho = random_density(d, d, rng);
        const KrausChannel phi =
            random_incoherent_channel(d, 1 + rng.uniform_index(d), rng, opts.tol);
        const MonotonicityCheck c =
            check_strong_monotonicity(rho, phi, q, opts.optimizer, opts.tol);
        return {c.total - c.average + opts.tol.strong_mono_margin,
                describe("C3 average vs total", c.average, c.total)};
      },
      opts);
}

SuiteResult suite_c4_convexity(const VerifyOptions& opts) {
  return run_suite(
      "c4_convexity", count(200, opts) * opts.dims.size(),
      [&](std::size_t i, Rng& rng) -> Trial {
        const std::size_t d = opts.dims[i % opts.dims.size()];
        const double q = rng.uniform(0.1, 0.9);
        const std::size_t parts = 2 + rng.uniform_index(2);
        const std::vector<double> w = rng.dirichlet(parts);
        ComplexMatrix mix(d, d);
        double avg = 0.0;
        for (std::size_t k = 0; k < parts; ++k) {
          // Full-rank parts only: the support-convention f_q is discontinuous
          // at rank-deficient states, and mixing across ranks can genuinely
          // break convexity there.
          const DensityMatrix rho_k = random_density(d, d, rng);
          avg += w[k] * cq_value(rho_k, q, opts);
          mix += Complex(w[k]) * rho_k.hermitian().matrix();
        }
        const DensityMatrix mixed =
            DensityMatrix::from(HermitianMatrix::symmetrized(mix, 1e-9));
        const double whole = cq_value(mixed, q, opts);
        return {avg - whole + opts.tol.strong_mono_margin,
                describe("C4 convexity", whole, avg)};
      },
      opts);
}

SuiteResult suite_c5_block_additivity(const VerifyOptions& opts) {
  return run_suite(
      "c5_block_additivity", count(200, opts) * opts.dims.size(),
      [&](std::size_t i, Rng& rng) -> Trial {
        const std::size_t d1 = opts.dims[i % opts.dims.size()];
        const std::size_t d2 = opts.dims[(i + 1) % opts.dims.size()];
        const double q = rng.uniform(0.1, 0.9);
        const double p = rng.uniform();
        const DensityMatrix rho1 = random_density(d1, d1, rng);
        const DensityMatrix rho2 = random_density(d2, d2, rng);
        const DensityMatrix block = block_diag(p, rho1, rho2);
        const double whole = cq_value(block, q, opts);
        const double parts = p * cq_value(rho1, q, opts) + (1.0 - p) * cq_value(rho2, q, opts);
        const double defect = std::abs(whole - parts);
        return {1e-6 - defect, describe("C5 block additivity", whole, parts)};
      },
      opts);
}

SuiteResult suite_cq_upper_bound(const VerifyOptions& opts) {
  return run_suite(
      "cq_upper_bound", count(200, opts) * opts.dims.size(),
      [&](std::size_t i, Rng& rng) -> Trial {
        const std::size_t d = opts.dims[i % opts.dims.size()];
        const double q = rng.uniform(0.1, 0.9);
        const DensityMatrix rho = random_density(d, 1 + rng.uniform_index(d), rng);
        const double v = cq_value(rho, q, opts);
        return {c_q_max(d, q) + 1e-8 - v, describe("upper bound", v, c_q_max(d, q))};
      },
      opts);
}

SuiteResult suite_phase_invariance(const VerifyOptions& opts) {
  return run_suite(
      "cq_phase_invariance", count(50, opts),
      [&](std::size_t i, Rng& rng) -> Trial {
        const std::size_t d = opts.dims[i % opts.dims.size()];
        const double q = rng.uniform(0.1, 0.9);
        std::vector<double> phases(d);
        for (auto& ph : phases) ph = rng.uniform(0.0, 2.0 * std::numbers::pi);
        const double with_phases = cq_value(maximally_coherent(d, phases), q, opts);
        const double flat = cq_value(maximally_coherent(d), q, opts);
        const double err = std::abs(with_phases - flat);
        return {1e-7 - err, describe("phase invariance", with_phases, flat)};
      },
      opts);
}

SuiteResult suite_pure_qubit_equality(const VerifyOptions& opts) {
  return run_suite(
      "pure_qubit_chalf_equals_2cg", count(100, opts),
      [&](std::size_t, Rng& rng) -> Trial {
        const DensityMatrix rho = random_pure_qubit(rng);
        const double ch = c_half(rho, opts.optimizer, opts.tol).value;
        const double cg = geometric_coherence(rho, opts.optimizer, opts.tol).value;
        const double err = std::abs(ch - 2.0 * cg);
        return {1e-6 - err, describe("C_half vs 2C_g on pure qubit", ch, 2.0 * cg)};
      },
      opts);
}

SuiteResult suite_mixed_qubit_strict(const VerifyOptions& opts) {
  return run_suite(
      "mixed_qubit_chalf_above_2cg", count(100, opts),
      [&](std::size_t, Rng& rng) -> Trial {
        // Full-rank qubits with both eigenvalues bounded away from 0.
        const DensityMatrix rho = random_full_rank_qubit(rng, 0.88);
        const double ch = c_half(rho, opts.optimizer, opts.tol).value;
        const double cg = geometric_coherence(rho, opts.optimizer, opts.tol).value;
        // Strictly above zero on full-rank states (which implies the always
        // valid gap >= -1e-8 as well).
        const double gap = ch - 2.0 * cg;
        return {gap - 1e-6, describe("C_half - 2C_g on mixed qubit", ch, 2.0 * cg)};
      },
      opts);
}

SuiteResult suite_optimizer_grid_oracle(const VerifyOptions& opts) {
  return run_suite(
      "optimizer_grid_oracle_d2", count(150, opts),
      [&](std::size_t i, Rng& rng) -> Trial {
        const DensityMatrix rho = random_density(2, 1 + rng.uniform_index(2), rng);
        OptimizerConfig cfg = opts.optimizer;
        const Tolerances& tol = opts.tol;
        double optimized = 0.0;
        double oracle = 0.0;
        const char* what = "";
        switch (i % 3) {
          case 0: {
            what = "c_q";
            const double q = (i / 3 % 3 == 0) ? 0.2 : (i / 3 % 3 == 1 ? 0.5 : 0.8);
            optimized = c_q(rho, q, cfg, tol).value;
            FqEvaluator fq(rho, q, tol);
            const SimplexOptimum grid = grid_scan_d2(
                [&fq](const std::vector<double>& p) { return fq(p); }, cfg.grid_points);
            oracle = (std::pow(grid.value, 1.0 / q) - 1.0) / (q - 1.0);
            break;
          }
          case 1: {
            what = "geometric";
            optimized = geometric_coherence(rho, cfg, tol).value;
            FidelityEvaluator fid(rho, tol);
            const SimplexOptimum grid = grid_scan_d2(
                [&fid](const std::vector<double>& p) { return fid(p); }, cfg.grid_points);
            oracle = 1.0 - grid.value;
            break;
          }
          default: {
            what = "tsallis_alpha";
            const double q = (i / 3 % 2 == 0) ? 0.5 : 1.5;
            optimized = tsallis_alpha_coherence(rho, q, cfg, tol).value;
            AlphaEvaluator ft(rho, q, tol);
            const double orientation = q < 1.0 ? 1.0 : -1.0;
            const SimplexOptimum grid = grid_scan_d2(
                [&ft, orientation](const std::vector<double>& p) -> double {
                  try {
                    const double v = ft(p);
                    return std::isfinite(v) ? orientation * v
                                            : -std::numeric_limits<double>::infinity();
                  } catch (const DomainError&) {
                    return -std::numeric_limits<double>::infinity();
                  }
                },
                cfg.grid_points);
            oracle = (orientation * grid.value - 1.0) / (q - 1.0);
            if (oracle < 0.0 && oracle > -1e-10) oracle = 0.0;
            break;
          }
        }
        const double err = std::abs(optimized - oracle);
        std::string detail = std::string(what) + ": " + describe("optimizer vs grid", optimized, oracle);
        return {1e-5 - err, detail};
      },
      opts);
}

// ---------------------------------------------------------------------------
// Channel suites
// ---------------------------------------------------------------------------

SuiteResult suite_channel_completeness(const VerifyOptions& opts) {
  return run_suite(
      "channel_completeness", count(200, opts),
      [&](std::size_t i, Rng& rng) -> Trial {
        const std::size_t d = opts.dims[i % opts.dims.size()];
        KrausChannel phi = (i % 2 == 0)
                               ? random_incoherent_channel(d, 1 + rng.uniform_index(d), rng, opts.tol)
                               : random_cptp_channel(d, 1 + rng.uniform_index(3), rng, opts.tol);
        std::vector<ComplexMatrix> ops = phi.operators();
        if (opts.inject_defect && i == 0) ops.front()(0, 0) += 0.01;
        ComplexMatrix sum(d, d);
        for (const auto& k : ops) sum += k.adjoint() * k;
        sum -= ComplexMatrix::identity(d);
        const double resid = sum.max_abs();
        // Incoherent channels must also pass the structural test, and the
        // applied channel must preserve the density invariants.
        double margin = opts.tol.kraus_completeness - resid;
        if (i % 2 == 0 && !is_incoherent_channel(phi, opts.tol.incoherent)) margin = -1.0;
        const DensityMatrix rho = random_density(d, d, rng);
        const DensityMatrix out = apply_channel(phi, rho, opts.tol);
        margin = std::min(margin, opts.tol.trace_one - std::abs(out.hermitian().trace() - 1.0));
        return {margin, describe("completeness residual", resid, opts.tol.kraus_completeness)};
      },
      opts);
}

SuiteResult suite_lemma2_forced(const VerifyOptions& opts) {
  return run_suite(
      "lemma2_forced_channels", count(300, opts),
      [&](std::size_t i, Rng& rng) -> Trial {
        const std::size_t d = opts.dims[i % opts.dims.size()];
        const double q = rng.uniform(0.05, 0.95);
        const DensityMatrix rho = random_density(d, d, rng);
        const DensityMatrix sigma = random_density(d, d, rng);
        KrausChannel phi = KrausChannel::identity(d);
        switch (i % 3) {
          case 0: break;
          case 1: phi = KrausChannel::from({random_unitary(d, rng)}, opts.tol); break;
          default: phi = KrausChannel::dephasing(d); break;
        }
        const InequalityCheck c = check_lemma2(rho, sigma, phi, q, opts.tol);
        return {c.rhs - c.lhs + opts.tol.lemma_margin, describe("lemma2 forced", c.lhs, c.rhs)};
      },
      opts);
}

SuiteResult suite_lemma2_census(const VerifyOptions& opts) {
  return run_suite(
      "lemma2_census_cptp", count(500, opts),
      [&](std::size_t i, Rng& rng) -> Trial {
        const std::size_t d = 2 + i % 3;
        const double q = rng.uniform(0.05, 0.95);
        const DensityMatrix rho = random_density(d, d, rng);
        const DensityMatrix sigma = random_density(d, d, rng);
        const KrausChannel phi = random_cptp_channel(d, 1 + rng.uniform_index(3), rng, opts.tol);
        const InequalityCheck c = check_lemma2(rho, sigma, phi, q, opts.tol);
        return {c.rhs - c.lhs + opts.tol.lemma_margin, describe("lemma2 census", c.lhs, c.rhs)};
      },
      opts, /*hard=*/false);
}

SuiteResult suite_lemma3_forced(const VerifyOptions& opts) {
  return run_suite(
      "lemma3_forced_channels", count(300, opts),
      [&](std::size_t i, Rng& rng) -> Trial {
        const std::size_t d = opts.dims[i % opts.dims.size()];
        const double q = rng.uniform(0.05, 0.95);
        const DensityMatrix rho = random_density(d, d, rng);
        const DensityMatrix sigma = random_density(d, d, rng);
        KrausChannel phi = KrausChannel::identity(d);
        switch (i % 3) {
          case 0: break;
          case 1: phi = KrausChannel::from({random_unitary(d, rng)}, opts.tol); break;
          default: phi = KrausChannel::dephasing(d); break;
        }
        const InequalityCheck c = check_lemma3(rho, sigma, phi, q, opts.tol);
        double margin = c.rhs - c.lhs + opts.tol.lemma_margin;
        // Single-Kraus unitary channels give equality (property V).
        if (i % 3 == 1)
          margin = std::min(margin, opts.tol.lemma_margin - std::abs(c.rhs - c.lhs));
        return {margin, describe("lemma3 forced", c.lhs, c.rhs)};
      },
      opts);
}

SuiteResult suite_lemma3_census(const VerifyOptions& opts) {
  return run_suite(
      "lemma3_census_incoherent", count(500, opts),
      [&](std::size_t i, Rng& rng) -> Trial {
        const std::size_t d = 2 + i % 3;
        const double q = rng.uniform(0.05, 0.95);
        const DensityMatrix rho = random_density(d, d, rng);
        const DensityMatrix sigma = random_density(d, d, rng);
        const KrausChannel phi =
            random_incoherent_channel(d, 1 + rng.uniform_index(d), rng, opts.tol);
        const InequalityCheck c = check_lemma3(rho, sigma, phi, q, opts.tol);
        return {c.rhs - c.lhs + opts.tol.lemma_margin, describe("lemma3 census", c.lhs, c.rhs)};
      },
      opts, /*hard=*/false);
}

}  // namespace

VerificationReport run_verification(const VerifyOptions& opts) {
  VerificationReport report;
  report.suites.push_back(suite_deformed_log_sandwich(opts));
  report.suites.push_back(suite_hoelder_step(opts));
  report.suites.push_back(suite_lemma1_sandwich(opts));
  report.suites.push_back(suite_tq_homogeneity(opts));
  report.suites.push_back(suite_tq_monotonicity(opts));
  report.suites.push_back(suite_tq_superadditivity(opts));
  report.suites.push_back(suite_tq_joint_concavity(opts));
  report.suites.push_back(suite_tq_unitary_invariance(opts));
  report.suites.push_back(suite_tq_unital_trace(opts));
  report.suites.push_back(suite_fq_tq_consistency(opts));
  report.suites.push_back(suite_pure_qubit_fidelity(opts));
  report.suites.push_back(suite_fidelity_properties(opts));
  report.suites.push_back(suite_alt_inequality(opts));
  report.suites.push_back(suite_maximal_closed_form(opts));
  report.suites.push_back(suite_c1_faithfulness(opts));
  report.suites.push_back(suite_c2_monotonicity(opts));
  report.suites.push_back(suite_c3_strong_monotonicity(opts));
  report.suites.push_back(suite_c4_convexity(opts));
  report.suites.push_back(suite_c5_block_additivity(opts));
  report.suites.push_back(suite_cq_upper_bound(opts));
  report.suites.push_back(suite_phase_invariance(opts));
  report.suites.push_back(suite_pure_qubit_equality(opts));
  report.suites.push_back(suite_mixed_qubit_strict(opts));
  report.suites.push_back(suite_optimizer_grid_oracle(opts));
  report.suites.push_back(suite_channel_completeness(opts));
  report.suites.push_back(suite_lemma2_forced(opts));
  report.suites.push_back(suite_lemma2_census(opts));
  report.suites.push_back(suite_lemma3_forced(opts));
  report.suites.push_back(suite_lemma3_census(opts));

  report.overall_pass = true;
  for (const auto& s : report.suites)
    if (s.hard && !s.passed) report.overall_pass = false;
  return report;
}

nlohmann::json report_to_json(const VerificationReport& report) {
  nlohmann::json suites = nlohmann::json::array();
  for (const auto& s : report.suites) {
    suites.push_back({{"name", s.name},
                      {"trials", s.trials},
                      {"passes", s.passes},
                      {"worst_margin", s.worst_margin},
                      {"hard", s.hard},
                      {"passed", s.passed},
                      {"counterexamples", s.counterexamples}});
  }
  return nlohmann::json{{"schema_version", 1},
                        {"suites", std::move(suites)},
                        {"overall", report.overall_pass ? "pass" : "fail"}};
}

}  // namespace qcoh

#include "qcoh/channels.hpp"

#include <cmath>
#include <string>

#include "qcoh/entropy.hpp"
#include "qcoh/errors.hpp"

namespace qcoh {

KrausChannel KrausChannel::from(std::vector<ComplexMatrix> kraus, const Tolerances& tol) {
  if (kraus.empty()) throw ValidationError("KrausChannel: no operators");
  const std::size_t d_out = kraus.front().rows();
  const std::size_t d_in = kraus.front().cols();
  for (const auto& k : kraus)
    if (k.rows() != d_out || k.cols() != d_in)
      throw DimensionError("KrausChannel: operators differ in shape");

  KrausChannel ch;
  ch.kraus_ = std::move(kraus);
  ch.dim_in_ = d_in;
  ch.dim_out_ = d_out;
  const double resid = ch.completeness_residual();
  if (resid > tol.kraus_completeness)
    throw ValidationError("KrausChannel: completeness residual " + std::to_string(resid));
  return ch;
}

KrausChannel KrausChannel::identity(std::size_t d) {
  return from({ComplexMatrix::identity(d)});
}

KrausChannel KrausChannel::dephasing(std::size_t d) {
  std::vector<ComplexMatrix> ks;
  for (std::size_t i = 0; i < d; ++i) {
    ComplexMatrix k(d, d);
    k(i, i) = 1.0;
    ks.push_back(std::move(k));
  }
  return from(std::move(ks));
}

double KrausChannel::completeness_residual() const {
  ComplexMatrix sum(dim_in_, dim_in_);
  for (const auto& k : kraus_) sum += k.adjoint() * k;
  sum -= ComplexMatrix::identity(dim_in_);
  return sum.max_abs();
}

DensityMatrix apply_channel(const KrausChannel& phi, const DensityMatrix& rho,
                            const Tolerances& tol) {
  if (phi.dim_in() != rho.dim())
    throw DimensionError("apply_channel: channel expects dimension " +
                         std::to_string(phi.dim_in()));
  ComplexMatrix out(phi.dim_out(), phi.dim_out());
  for (const auto& k : phi.operators()) out += k * rho.hermitian().matrix() * k.adjoint();
  const double tr = out.trace().real();
  if (std::abs(tr - 1.0) > tol.trace_one)
    throw InternalConsistencyError("apply_channel: trace drifted to " + std::to_string(tr));
  return DensityMatrix::from(HermitianMatrix::symmetrized(out, 1e-9), tol);
}

HermitianMatrix apply_to_hermitian(const KrausChannel& phi, const HermitianMatrix& h) {
  if (phi.dim_in() != h.dim())
    throw DimensionError("apply_to_hermitian: dimension mismatch");
  ComplexMatrix out(phi.dim_out(), phi.dim_out());
  for (const auto& k : phi.operators()) out += k * h.matrix() * k.adjoint();
  return HermitianMatrix::symmetrized(out, 1e-9);
}

KrausChannel random_unitary_mixture(std::size_t d, std::size_t n_unitaries, Rng& rng,
                                    const Tolerances& tol) {
  if (n_unitaries < 1)
    throw DomainError("random_unitary_mixture: need at least one unitary");
  const std::vector<double> w = rng.dirichlet(n_unitaries);
  std::vector<ComplexMatrix> ks;
  ks.reserve(n_unitaries);
  for (std::size_t n = 0; n < n_unitaries; ++n) {
    ComplexMatrix u = random_unitary(d, rng);
    u *= Complex(std::sqrt(w[n]));
    ks.push_back(std::move(u));
  }
  return KrausChannel::from(std::move(ks), tol);
}

MeasurementEnsemble selective_measure(const KrausChannel& phi, const DensityMatrix& rho,
                                      const Tolerances& tol) {
  if (phi.dim_in() != rho.dim())
    throw DimensionError("selective_measure: dimension mismatch");
  MeasurementEnsemble ens;
  double mass = 0.0;
  for (const auto& k : phi.operators()) {
    ComplexMatrix m = k * rho.hermitian().matrix() * k.adjoint();
    const double p = m.trace().real();
    if (p <= tol.branch_prune) continue;
    m *= Complex(1.0 / p);
    ens.branches.push_back(
        {p, DensityMatrix::from(HermitianMatrix::symmetrized(m, 1e-9), tol)});
    mass += p;
  }
  for (auto& b : ens.branches) b.probability /= mass;
  return ens;
}

bool is_incoherent_channel(const KrausChannel& phi, double tol) {
  for (const auto& k : phi.operators()) {
    for (std::size_t j = 0; j < k.cols(); ++j) {
      int nonzero = 0;
      for (std::size_t i = 0; i < k.rows(); ++i)
        if (std::abs(k(i, j)) > tol && ++nonzero > 1) return false;
    }
  }
  return true;
}

KrausChannel random_incoherent_channel(std::size_t d, std::size_t n_kraus, Rng& rng,
                                       const Tolerances& tol) {
  if (n_kraus < 1) throw DomainError("random_incoherent_channel: n_kraus must be >= 1");
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<std::vector<std::size_t>> perms;
    std::vector<std::vector<Complex>> vals;  // vals[n][j]: column j entry of K_n
    perms.reserve(n_kraus);
    vals.reserve(n_kraus);
    for (std::size_t n = 0; n < n_kraus; ++n) {
      perms.push_back(rng.permutation(d));
      std::vector<Complex> v(d);
      for (auto& z : v) z = rng.complex_normal();
      vals.push_back(std::move(v));
    }
    // Column weights across the whole channel; completeness needs each > 0.
    bool feasible = true;
    std::vector<double> weight(d, 0.0);
    for (std::size_t n = 0; n < n_kraus; ++n)
      for (std::size_t j = 0; j < d; ++j) weight[j] += std::norm(vals[n][j]);
    for (double w : weight)
      if (w <= 0.0) feasible = false;
    if (!feasible) continue;

    std::vector<ComplexMatrix> ks;
    ks.reserve(n_kraus);
    for (std::size_t n = 0; n < n_kraus; ++n) {
      ComplexMatrix k(d, d);
      for (std::size_t j = 0; j < d; ++j)
        k(perms[n][j], j) = vals[n][j] / std::sqrt(weight[j]);
      ks.push_back(std::move(k));
    }
    return KrausChannel::from(std::move(ks), tol);
  }
  throw ValidationError("random_incoherent_channel: could not draw a feasible channel");
}

KrausChannel random_incoherent_channel(std::size_t d, std::size_t n_kraus,
                                       std::uint64_t seed, const Tolerances& tol) {
  Rng rng(seed);
  return random_incoherent_channel(d, n_kraus, rng, tol);
}

KrausChannel random_cptp_channel(std::size_t d, std::size_t env_dim, Rng& rng,
                                 const Tolerances& tol) {
  if (env_dim < 1) throw DomainError("random_cptp_channel: env_dim must be >= 1");
  const std::size_t rows = d * env_dim;
  // Random isometry: orthonormalize the columns of a Ginibre draw (two
  // Gram-Schmidt passes), then slice into env_dim stacked Kraus blocks.
  ComplexMatrix g(rows, d);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < d; ++j) g(i, j) = rng.complex_normal();
  for (std::size_t j = 0; j < d; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < j; ++k) {
        Complex dot = 0.0;
        for (std::size_t i = 0; i < rows; ++i) dot += std::conj(g(i, k)) * g(i, j);
        for (std::size_t i = 0; i < rows; ++i) g(i, j) -= dot * g(i, k);
      }
    }
    double nrm = 0.0;
    for (std::size_t i = 0; i < rows; ++i) nrm += std::norm(g(i, j));
    nrm = std::sqrt(nrm);
    for (std::size_t i = 0; i < rows; ++i) g(i, j) /= nrm;
  }
  std::vector<ComplexMatrix> ks;
  ks.reserve(env_dim);
  for (std::size_t n = 0; n < env_dim; ++n) {
    ComplexMatrix k(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) k(i, j) = g(n * d + i, j);
    ks.push_back(std::move(k));
  }
  return KrausChannel::from(std::move(ks), tol);
}

KrausChannel random_cptp_channel(std::size_t d, std::size_t env_dim, std::uint64_t seed,
                                 const Tolerances& tol) {
  Rng rng(seed);
  return random_cptp_channel(d, env_dim, rng, tol);
}

InequalityCheck check_lemma2(const DensityMatrix& rho, const DensityMatrix& sigma,
                             const KrausChannel& phi, double q, const Tolerances& tol) {
  InequalityCheck c;
  c.lhs = f_q(rho, sigma, q, tol);
  c.rhs = f_q(apply_channel(phi, rho, tol), apply_channel(phi, sigma, tol), q, tol);
  c.holds = c.rhs >= c.lhs - tol.lemma_margin;
  return c;
}

InequalityCheck check_lemma3(const DensityMatrix& rho, const DensityMatrix& sigma,
                             const KrausChannel& phi, double q, const Tolerances& tol) {
  InequalityCheck c;
  c.lhs = f_q(rho, sigma, q, tol);
  c.rhs = 0.0;
  for (const auto& k : phi.operators()) {
    ComplexMatrix mr = k * rho.hermitian().matrix() * k.adjoint();
    ComplexMatrix ms = k * sigma.hermitian().matrix() * k.adjoint();
    const double pn = mr.trace().real();
    const double qn = ms.trace().real();
    // Branches need both weights; the paper's sum runs over surviving outcomes.
    if (pn <= tol.branch_prune || qn <= tol.branch_prune) continue;
    mr *= Complex(1.0 / pn);
    ms *= Complex(1.0 / qn);
    const DensityMatrix rn = DensityMatrix::from(HermitianMatrix::symmetrized(mr, 1e-9), tol);
    const DensityMatrix sn = DensityMatrix::from(HermitianMatrix::symmetrized(ms, 1e-9), tol);
    c.rhs += std::pow(pn, q) * std::pow(qn, 1.0 - q) * f_q(rn, sn, q, tol);
  }
  c.holds = c.rhs >= c.lhs - tol.lemma_margin;
  return c;
}

MonotonicityCheck check_strong_monotonicity(const DensityMatrix& rho,
                                            const KrausChannel& phi, double q,
                                            const OptimizerConfig& cfg,
                                            const Tolerances& tol) {
  if (!is_incoherent_channel(phi, tol.incoherent))
    throw DomainError("check_strong_monotonicity: channel is not incoherent");
  MonotonicityCheck c;
  c.total = c_q(rho, q, cfg, tol).value;
  const MeasurementEnsemble ens = selective_measure(phi, rho, tol);
  for (const auto& b : ens.branches)
    c.average += b.probability * c_q(b.state, q, cfg, tol).value;
  c.holds = c.average <= c.total + tol.strong_mono_margin;
  return c;
}

std::optional<AlphaViolation> find_tsallis_alpha_violation(std::size_t d, double q,
                                                           std::size_t trials,
                                                           std::uint64_t seed,
                                                           const OptimizerConfig& cfg,
                                                           const Tolerances& tol) {
  EntropyParam::for_alpha_entropy(q);
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = Rng::stream(seed, t);
    const DensityMatrix rho = random_density(d, d, rng);
    const std::size_t n_kraus = 2 + rng.uniform_index(d);
    const KrausChannel phi = random_incoherent_channel(d, n_kraus, rng, tol);

    const double total = tsallis_alpha_coherence(rho, q, cfg, tol).value;
    double average = 0.0;
    for (const auto& b : selective_measure(phi, rho, tol).branches)
      average += b.probability * tsallis_alpha_coherence(b.state, q, cfg, tol).value;

    if (average > total + tol.alpha_violation_margin)
      return AlphaViolation{t, rho, phi, average, total};
  }
  return std::nullopt;
}

}  // namespace qcoh

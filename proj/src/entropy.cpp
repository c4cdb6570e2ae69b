#include "qcoh/entropy.hpp"

#include <cmath>
#include <string>

#include "qcoh/errors.hpp"

namespace qcoh {

namespace {

double support_threshold(const Spectrum& s, double cutoff) {
  double lam_max = 0.0;
  for (double lam : s.eigenvalues) lam_max = std::max(lam_max, std::abs(lam));
  return cutoff * lam_max;
}

// Trace of the product of two Hermitian matrices; must be real up to rounding.
double real_trace_product(const HermitianMatrix& a, const HermitianMatrix& b,
                          double imag_tol) {
  Complex t = 0.0;
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t += a(i, j) * b(j, i);
  if (std::abs(t.imag()) > imag_tol)
    throw InternalConsistencyError("trace has imaginary residue " +
                                   std::to_string(t.imag()));
  return t.real();
}

// rho^{-1/2} sigma rho^{-1/2} with pseudo-inverse square roots.
HermitianMatrix whitened(const HermitianMatrix& inv_sqrt_rho, const HermitianMatrix& sigma) {
  ComplexMatrix x = inv_sqrt_rho.matrix() * sigma.matrix() * inv_sqrt_rho.matrix();
  return HermitianMatrix::symmetrized(x, 1e-9);
}

}  // namespace

EntropyParam EntropyParam::for_operator_entropy(double q) {
  if (!(q >= 0.0 && q < 1.0))
    throw DomainError("T_q: q = " + std::to_string(q) + " outside [0, 1)");
  return {q};
}

EntropyParam EntropyParam::for_measure(double q) {
  if (!(q > 0.0 && q < 1.0))
    throw DomainError("C_q: q = " + std::to_string(q) + " outside (0, 1)");
  return {q};
}

EntropyParam EntropyParam::for_alpha_entropy(double q) {
  if (!(q > 0.0 && q <= 2.0) || q == 1.0)
    throw DomainError("Tsallis alpha entropy: q = " + std::to_string(q) +
                      " outside (0, 2] \\ {1}");
  return {q};
}

double deformed_log(double x, double q) {
  if (!(x > 0.0)) throw DomainError("deformed_log: x must be positive");
  EntropyParam::for_operator_entropy(q);
  return (std::pow(x, 1.0 - q) - 1.0) / (1.0 - q);
}

void require_support_inclusion(const Spectrum& rho_spec, const Spectrum& sigma_spec,
                               const Tolerances& tol) {
  const std::size_t n = rho_spec.dim();
  if (n != sigma_spec.dim())
    throw DimensionError("support check: dimension mismatch");
  const double thr_rho = support_threshold(rho_spec, tol.support_cutoff);
  const double thr_sigma = support_threshold(sigma_spec, tol.support_cutoff);

  for (std::size_t k = 0; k < n; ++k) {
    if (rho_spec.eigenvalues[k] <= thr_rho) continue;
    // Residual of the rho eigenvector against the sigma range projector.
    std::vector<Complex> v(n);
    for (std::size_t r = 0; r < n; ++r) v[r] = rho_spec.eigenvectors(r, k);
    for (std::size_t m = 0; m < n; ++m) {
      if (sigma_spec.eigenvalues[m] <= thr_sigma) continue;
      Complex dot = 0.0;
      for (std::size_t r = 0; r < n; ++r)
        dot += std::conj(sigma_spec.eigenvectors(r, m)) * v[r];
      for (std::size_t r = 0; r < n; ++r) v[r] -= dot * sigma_spec.eigenvectors(r, m);
    }
    double resid = 0.0;
    for (const auto& z : v) resid += std::norm(z);
    resid = std::sqrt(resid);
    if (resid > tol.support_inclusion)
      throw DomainError("support violation: rho eigenvector " + std::to_string(k) +
                        " (eigenvalue " + std::to_string(rho_spec.eigenvalues[k]) +
                        ") leaves supp(sigma), residual " + std::to_string(resid));
  }
}

HermitianMatrix t_q_operator(const HermitianMatrix& rho, const HermitianMatrix& sigma,
                             double q, const Tolerances& tol) {
  EntropyParam::for_operator_entropy(q);
  if (rho.dim() != sigma.dim()) throw DimensionError("T_q: dimension mismatch");

  Spectrum rho_spec = eigh(rho);
  Spectrum sigma_spec = eigh(sigma);
  require_support_inclusion(rho_spec, sigma_spec, tol);

  const double thr = support_threshold(rho_spec, tol.support_cutoff);
  std::vector<double> sqrt_vals(rho_spec.dim());
  std::vector<double> inv_sqrt_vals(rho_spec.dim());
  for (std::size_t k = 0; k < rho_spec.dim(); ++k) {
    const double lam = rho_spec.eigenvalues[k];
    if (lam <= thr) {
      sqrt_vals[k] = 0.0;
      inv_sqrt_vals[k] = 0.0;
    } else {
      sqrt_vals[k] = std::sqrt(lam);
      inv_sqrt_vals[k] = 1.0 / sqrt_vals[k];
    }
  }
  HermitianMatrix rh = rho_spec.synthesize(sqrt_vals);
  HermitianMatrix rmh = rho_spec.synthesize(inv_sqrt_vals);

  HermitianMatrix x = whitened(rmh, sigma);
  HermitianMatrix xp = spectral_pow(x, 1.0 - q, tol.support_cutoff);
  ComplexMatrix sandwich = rh.matrix() * xp.matrix() * rh.matrix();
  HermitianMatrix num =
      HermitianMatrix::symmetrized(sandwich, 1e-9) - rho;
  return (1.0 / (1.0 - q)) * num;
}

double f_q(const DensityMatrix& rho, const DensityMatrix& sigma, double q,
           const Tolerances& tol) {
  EntropyParam::for_operator_entropy(q);
  if (rho.dim() != sigma.dim()) throw DimensionError("f_q: dimension mismatch");

  Spectrum rho_spec = eigh(rho.hermitian());
  Spectrum sigma_spec = eigh(sigma.hermitian());
  require_support_inclusion(rho_spec, sigma_spec, tol);

  const double thr = support_threshold(rho_spec, tol.support_cutoff);
  std::vector<double> inv_sqrt_vals(rho_spec.dim());
  std::vector<double> vals(rho_spec.dim());
  for (std::size_t k = 0; k < rho_spec.dim(); ++k) {
    const double lam = rho_spec.eigenvalues[k];
    inv_sqrt_vals[k] = lam > thr ? 1.0 / std::sqrt(lam) : 0.0;
    vals[k] = lam > thr ? lam : 0.0;
  }
  HermitianMatrix rmh = rho_spec.synthesize(inv_sqrt_vals);
  HermitianMatrix rho_supp = rho_spec.synthesize(vals);

  HermitianMatrix x = whitened(rmh, sigma.hermitian());
  HermitianMatrix xp = spectral_pow(x, 1.0 - q, tol.support_cutoff);
  // Tr[rho^{1/2} X^{1-q} rho^{1/2}] = Tr[X^{1-q} rho] on the support.
  return real_trace_product(xp, rho_supp, tol.trace_imag);
}

double d_q(const DensityMatrix& rho, const DensityMatrix& sigma, double q,
           const Tolerances& tol) {
  EntropyParam::for_measure(q);
  const double f = f_q(rho, sigma, q, tol);
  return (std::pow(f, 1.0 / q) - 1.0) / (q - 1.0);
}

double tsallis_alpha_f(const DensityMatrix& rho, const DensityMatrix& sigma, double q,
                       const Tolerances& tol) {
  EntropyParam::for_alpha_entropy(q);
  if (rho.dim() != sigma.dim())
    throw DimensionError("tsallis_alpha_f: dimension mismatch");
  if (q > 1.0) {
    Spectrum rho_spec = eigh(rho.hermitian());
    Spectrum sigma_spec = eigh(sigma.hermitian());
    require_support_inclusion(rho_spec, sigma_spec, tol);
  }
  HermitianMatrix a = spectral_pow(rho.hermitian(), q, tol.support_cutoff);
  HermitianMatrix b = spectral_pow(sigma.hermitian(), 1.0 - q, tol.support_cutoff);
  return real_trace_product(a, b, tol.trace_imag);
}

double tsallis_alpha_entropy(const DensityMatrix& rho, const DensityMatrix& sigma,
                             double q, const Tolerances& tol) {
  const double f = tsallis_alpha_f(rho, sigma, q, tol);
  return (f - 1.0) / (q - 1.0);
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma,
                const Tolerances& tol) {
  if (rho.dim() != sigma.dim()) throw DimensionError("fidelity: dimension mismatch");
  HermitianMatrix rh = spectral_pow(rho.hermitian(), 0.5, tol.support_cutoff);
  ComplexMatrix m = rh.matrix() * sigma.hermitian().matrix() * rh.matrix();
  Spectrum s = eigh(HermitianMatrix::symmetrized(m, 1e-9));
  // Zero out sub-cutoff eigenvalues before the square root: rank-deficient
  // products otherwise pick up sqrt(rounding noise) ~ 1e-8.
  const double thr = support_threshold(s, tol.support_cutoff);
  double sum = 0.0;
  for (double lam : s.eigenvalues)
    if (lam > thr) sum += std::sqrt(lam);
  return sum * sum;
}

FqEvaluator::FqEvaluator(const DensityMatrix& rho, double q, const Tolerances& tol)
    : q_(EntropyParam::for_operator_entropy(q).q), tol_(tol) {
  Spectrum spec = eigh(rho.hermitian());
  const double thr = support_threshold(spec, tol.support_cutoff);
  std::vector<double> sqrt_vals(spec.dim());
  std::vector<double> inv_sqrt_vals(spec.dim());
  for (std::size_t k = 0; k < spec.dim(); ++k) {
    const double lam = spec.eigenvalues[k];
    sqrt_vals[k] = lam > thr ? std::sqrt(lam) : 0.0;
    inv_sqrt_vals[k] = lam > thr ? 1.0 / sqrt_vals[k] : 0.0;
  }
  sqrt_rho_ = spec.synthesize(sqrt_vals);
  inv_sqrt_rho_ = spec.synthesize(inv_sqrt_vals);
}

double FqEvaluator::operator()(const std::vector<double>& probs) const {
  const std::size_t n = sqrt_rho_.dim();
  if (probs.size() != n) throw DimensionError("FqEvaluator: wrong probability count");
  // X = rho^{-1/2} diag(p) rho^{-1/2}, built directly from the diagonal.
  ComplexMatrix x(n, n);
  const ComplexMatrix& rmh = inv_sqrt_rho_.matrix();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      Complex acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        const double p = probs[k] > 0.0 ? probs[k] : 0.0;
        acc += rmh(i, k) * p * rmh(k, j);
      }
      x(i, j) = i == j ? Complex(acc.real(), 0.0) : acc;
      if (i != j) x(j, i) = std::conj(acc);
    }
  }
  HermitianMatrix xp =
      spectral_pow(hermitian_unchecked(std::move(x)), 1.0 - q_, tol_.support_cutoff);
  // Tr[rho^{1/2} X^{1-q} rho^{1/2}]: sandwich trace against rho^{1/2} twice.
  Complex t = 0.0;
  const ComplexMatrix& rh = sqrt_rho_.matrix();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) t += rh(i, j) * xp(j, k) * rh(k, i);
  if (std::abs(t.imag()) > tol_.trace_imag)
    throw InternalConsistencyError("f_q trace has imaginary residue");
  return t.real();
}

FidelityEvaluator::FidelityEvaluator(const DensityMatrix& rho, const Tolerances& tol)
    : tol_(tol) {
  sqrt_rho_ = spectral_pow(rho.hermitian(), 0.5, tol.support_cutoff);
}

double FidelityEvaluator::operator()(const std::vector<double>& probs) const {
  const std::size_t n = sqrt_rho_.dim();
  if (probs.size() != n)
    throw DimensionError("FidelityEvaluator: wrong probability count");
  ComplexMatrix m(n, n);
  const ComplexMatrix& rh = sqrt_rho_.matrix();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      Complex acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        const double p = probs[k] > 0.0 ? probs[k] : 0.0;
        acc += rh(i, k) * p * rh(k, j);
      }
      m(i, j) = i == j ? Complex(acc.real(), 0.0) : acc;
      if (i != j) m(j, i) = std::conj(acc);
    }
  }
  Spectrum s = eigh(hermitian_unchecked(std::move(m)));
  const double thr = support_threshold(s, tol_.support_cutoff);
  double sum = 0.0;
  for (double lam : s.eigenvalues)
    if (lam > thr) sum += std::sqrt(lam);
  return sum * sum;
}

AlphaEvaluator::AlphaEvaluator(const DensityMatrix& rho, double q, const Tolerances& tol)
    : q_(EntropyParam::for_alpha_entropy(q).q), tol_(tol) {
  rho_pow_q_ = spectral_pow(rho.hermitian(), q_, tol.support_cutoff);
}

double AlphaEvaluator::operator()(const std::vector<double>& probs) const {
  const std::size_t n = rho_pow_q_.dim();
  if (probs.size() != n) throw DimensionError("AlphaEvaluator: wrong probability count");
  // Diagonal sigma makes this a plain sum: Tr rho^q diag(p)^{1-q}.
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = rho_pow_q_(i, i).real();
    const double p = probs[i] > 0.0 ? probs[i] : 0.0;
    if (q_ > 1.0 && p == 0.0) {
      if (a > 1e-14)
        throw DomainError("tsallis alpha: sigma support misses the reference basis");
      continue;
    }
    sum += a * std::pow(p, 1.0 - q_);
  }
  return sum;
}

}  // namespace qcoh

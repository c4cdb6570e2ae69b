#include "qcoh/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "qcoh/errors.hpp"

namespace qcoh {

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
  double sum = 0.0;
  const std::size_t n = a.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) sum += std::norm(a(i, j));
  return std::sqrt(2.0 * sum);
}

}  // namespace

HermitianMatrix Spectrum::synthesize(const std::vector<double>& values) const {
  const std::size_t n = dim();
  if (values.size() != n)
    throw DimensionError("Spectrum::synthesize: value count mismatch");
  const ComplexMatrix& u = eigenvectors;
  ComplexMatrix out(n, n);
  // Upper triangle of U diag(v) U^dag, mirrored, so the result is Hermitian
  // to the last bit.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      Complex acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += values[k] * u(i, k) * std::conj(u(j, k));
      if (i == j) {
        out(i, i) = Complex(acc.real(), 0.0);
      } else {
        out(i, j) = acc;
        out(j, i) = std::conj(acc);
      }
    }
  }
  return hermitian_unchecked(std::move(out));
}

Spectrum eigh(const HermitianMatrix& h, int max_sweeps) {
  const std::size_t n = h.dim();
  ComplexMatrix a = h.matrix();
  ComplexMatrix u = ComplexMatrix::identity(n);

  const double scale = std::max(a.max_abs(), 1e-300);
  const double stop = 1e-15 * scale * static_cast<double>(n);

  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    if (off_diagonal_norm(a) <= stop) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double b = std::abs(apq);
        if (b <= 1e-18 * scale) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        // Phase factor turns the 2x2 block into a real symmetric one, then a
        // classic Jacobi rotation annihilates it:
        //   V = [[w*c, w*s], [-s, c]],  w = apq/|apq|.
        const Complex w = apq / b;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * b);
        const double t =
            (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Complex vpp = w * c;
        const Complex vpq = w * s;

        // Columns p and q of A <- A V.
        for (std::size_t r = 0; r < n; ++r) {
          const Complex arp = a(r, p);
          const Complex arq = a(r, q);
          a(r, p) = arp * vpp - arq * s;
          a(r, q) = arp * vpq + arq * c;
        }
        // Rows p and q of A <- V^dag A.
        for (std::size_t col = 0; col < n; ++col) {
          const Complex apc = a(p, col);
          const Complex aqc = a(q, col);
          a(p, col) = std::conj(vpp) * apc - s * aqc;
          a(q, col) = std::conj(vpq) * apc + c * aqc;
        }
        a(p, p) = Complex(a(p, p).real(), 0.0);
        a(q, q) = Complex(a(q, q).real(), 0.0);
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        // Accumulate eigenvectors U <- U V.
        for (std::size_t r = 0; r < n; ++r) {
          const Complex urp = u(r, p);
          const Complex urq = u(r, q);
          u(r, p) = urp * vpp - urq * s;
          u(r, q) = urp * vpq + urq * c;
        }
      }
    }
  }

  const double residual = off_diagonal_norm(a);
  if (residual > stop && sweep == max_sweeps)
    throw ConvergenceError("eigh: Jacobi sweeps exhausted, off-diagonal residual " +
                               std::to_string(residual),
                           residual);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  Spectrum s;
  s.eigenvalues.resize(n);
  s.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    s.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t r = 0; r < n; ++r) s.eigenvectors(r, k) = u(r, order[k]);
  }
  return s;
}

HermitianMatrix matrix_function(const HermitianMatrix& h,
                                const std::function<double(double)>& f,
                                double support_cutoff) {
  Spectrum s = eigh(h);
  double lam_max = 0.0;
  for (double lam : s.eigenvalues) lam_max = std::max(lam_max, std::abs(lam));
  const double thr = support_cutoff * lam_max;

  std::vector<double> mapped(s.dim());
  for (std::size_t k = 0; k < s.dim(); ++k) {
    const double lam = s.eigenvalues[k];
    if (std::abs(lam) <= thr) {
      mapped[k] = 0.0;
      continue;
    }
    const double y = f(lam);
    if (!std::isfinite(y))
      throw DomainError("matrix_function: f undefined on retained eigenvalue " +
                        std::to_string(lam));
    mapped[k] = y;
  }
  return s.synthesize(mapped);
}

HermitianMatrix spectral_pow(const HermitianMatrix& h, double p, double support_cutoff) {
  const bool integer_power = p == std::floor(p);
  return matrix_function(
      h,
      [p, integer_power](double lam) -> double {
        if (lam < 0.0 && !integer_power)
          return std::numeric_limits<double>::quiet_NaN();
        return std::pow(lam, p);
      },
      support_cutoff);
}

PsdOrder psd_order_leq(const HermitianMatrix& a, const HermitianMatrix& b, double tol) {
  if (a.dim() != b.dim()) throw DimensionError("psd_order_leq: dimension mismatch");
  Spectrum s = eigh(b - a);
  PsdOrder result;
  result.min_eigenvalue = s.eigenvalues.front();
  result.holds = result.min_eigenvalue >= -tol;
  if (!result.holds) {
    result.witness.resize(s.dim());
    for (std::size_t r = 0; r < s.dim(); ++r) result.witness[r] = s.eigenvectors(r, 0);
  }
  return result;
}

}  // namespace qcoh

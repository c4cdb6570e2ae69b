#include "qcoh/states.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "qcoh/errors.hpp"

namespace qcoh {

DensityMatrix DensityMatrix::from(const HermitianMatrix& m, const Tolerances& tol) {
  if (m.dim() == 0) throw ValidationError("DensityMatrix: empty matrix");
  const double tr = m.trace();
  if (std::abs(tr - 1.0) > tol.trace_one)
    throw ValidationError("DensityMatrix: trace " + std::to_string(tr) + " != 1");
  Spectrum s = eigh(m);
  if (s.eigenvalues.front() < -tol.psd_min_eig)
    throw ValidationError("DensityMatrix: negative eigenvalue " +
                          std::to_string(s.eigenvalues.front()));
  return DensityMatrix(m);
}

double DensityMatrix::purity() const {
  const std::size_t d = dim();
  double sum = 0.0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) sum += std::norm(mat_(i, j));
  return sum;
}

DiagonalState DiagonalState::from(std::vector<double> probs, const Tolerances& tol) {
  if (probs.empty()) throw ValidationError("DiagonalState: empty");
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0))
      throw ValidationError("DiagonalState: negative probability " + std::to_string(p));
    sum += p;
  }
  if (std::abs(sum - 1.0) > tol.prob_sum)
    throw ValidationError("DiagonalState: sum " + std::to_string(sum) + " != 1");
  DiagonalState s;
  s.probs_ = std::move(probs);
  return s;
}

DiagonalState DiagonalState::uniform(std::size_t d) {
  DiagonalState s;
  s.probs_.assign(d, 1.0 / static_cast<double>(d));
  return s;
}

DensityMatrix DiagonalState::embed() const {
  ComplexMatrix m(dim(), dim());
  for (std::size_t i = 0; i < dim(); ++i) m(i, i) = probs_[i];
  return DensityMatrix::from(HermitianMatrix::symmetrized(m));
}

double BlochVector::norm() const { return std::sqrt(c1 * c1 + c2 * c2 + c3 * c3); }

DensityMatrix density_from_bloch(const BlochVector& c, const Tolerances& tol) {
  if (c.norm() > 1.0 + 1e-12)
    throw DomainError("density_from_bloch: |c| = " + std::to_string(c.norm()) + " > 1");
  ComplexMatrix m(2, 2);
  m(0, 0) = 0.5 * (1.0 + c.c3);
  m(1, 1) = 0.5 * (1.0 - c.c3);
  m(0, 1) = 0.5 * Complex(c.c1, -c.c2);
  m(1, 0) = 0.5 * Complex(c.c1, c.c2);
  // Rounding can leave |c| = 1 inputs a hair outside PSD; widen only that check.
  Tolerances t = tol;
  t.psd_min_eig = std::max(t.psd_min_eig, 1e-11);
  return DensityMatrix::from(HermitianMatrix::symmetrized(m), t);
}

DensityMatrix maximally_coherent(std::size_t d, const std::vector<double>& phases) {
  if (d < 1) throw DomainError("maximally_coherent: d must be positive");
  if (phases.size() != d)
    throw DimensionError("maximally_coherent: need exactly d phases");
  std::vector<Complex> v(d);
  const double inv = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t j = 0; j < d; ++j)
    v[j] = inv * Complex(std::cos(phases[j]), std::sin(phases[j]));
  ComplexMatrix m(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) = v[i] * std::conj(v[j]);
  return DensityMatrix::from(HermitianMatrix::symmetrized(m));
}

DensityMatrix maximally_coherent(std::size_t d) {
  return maximally_coherent(d, std::vector<double>(d, 0.0));
}

DensityMatrix random_density(std::size_t d, std::size_t rank, Rng& rng) {
  if (rank < 1 || rank > d)
    throw DomainError("random_density: rank must be in [1, d]");
  ComplexMatrix g(d, rank);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < rank; ++j) g(i, j) = rng.complex_normal();
  ComplexMatrix w = g * g.adjoint();
  const double tr = w.trace().real();
  w *= Complex(1.0 / tr);
  return DensityMatrix::from(HermitianMatrix::symmetrized(w, 1e-9));
}

DensityMatrix random_density(std::size_t d, std::size_t rank, std::uint64_t seed) {
  Rng rng(seed);
  return random_density(d, rank, rng);
}

bool is_incoherent(const DensityMatrix& rho, double tol) {
  const std::size_t d = rho.dim();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (i != j && std::abs(rho(i, j)) > tol) return false;
  return true;
}

DiagonalState dephase(const DensityMatrix& rho) {
  std::vector<double> p(rho.dim());
  double sum = 0.0;
  for (std::size_t i = 0; i < rho.dim(); ++i) {
    p[i] = std::max(rho(i, i).real(), 0.0);
    sum += p[i];
  }
  for (auto& pi : p) pi /= sum;
  return DiagonalState::from(std::move(p));
}

DensityMatrix block_diag(double p, const DensityMatrix& rho1, const DensityMatrix& rho2) {
  if (p < 0.0 || p > 1.0) throw DomainError("block_diag: p outside [0, 1]");
  const std::size_t d1 = rho1.dim();
  const std::size_t d2 = rho2.dim();
  ComplexMatrix m(d1 + d2, d1 + d2);
  for (std::size_t i = 0; i < d1; ++i)
    for (std::size_t j = 0; j < d1; ++j) m(i, j) = p * rho1(i, j);
  for (std::size_t i = 0; i < d2; ++i)
    for (std::size_t j = 0; j < d2; ++j) m(d1 + i, d1 + j) = (1.0 - p) * rho2(i, j);
  return DensityMatrix::from(HermitianMatrix::symmetrized(m));
}

ComplexMatrix random_unitary(std::size_t d, Rng& rng) {
  // Modified Gram-Schmidt QR of a Ginibre draw, columns phase-fixed so the
  // implicit R has positive diagonal.
  ComplexMatrix g(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) g(i, j) = rng.complex_normal();
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = 0; k < j; ++k) {
      Complex dot = 0.0;
      for (std::size_t i = 0; i < d; ++i) dot += std::conj(g(i, k)) * g(i, j);
      for (std::size_t i = 0; i < d; ++i) g(i, j) -= dot * g(i, k);
    }
    // Second orthogonalization pass keeps columns orthonormal to ~1e-15.
    for (std::size_t k = 0; k < j; ++k) {
      Complex dot = 0.0;
      for (std::size_t i = 0; i < d; ++i) dot += std::conj(g(i, k)) * g(i, j);
      for (std::size_t i = 0; i < d; ++i) g(i, j) -= dot * g(i, k);
    }
    double nrm = 0.0;
    for (std::size_t i = 0; i < d; ++i) nrm += std::norm(g(i, j));
    nrm = std::sqrt(nrm);
    for (std::size_t i = 0; i < d; ++i) g(i, j) /= nrm;
  }
  return g;
}

DensityMatrix load_state_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileFormatError("state file: cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw FileFormatError("state file: parse error: " + std::string(e.what()));
  }
  if (!j.is_object() || !j.contains("dim") || !j.contains("re") || !j.contains("im"))
    throw FileFormatError("state file: missing dim/re/im");
  std::size_t d = 0;
  ComplexMatrix m;
  try {
    d = j.at("dim").get<std::size_t>();
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    if (!re.is_array() || !im.is_array() || re.size() != d || im.size() != d)
      throw FileFormatError("state file: re/im must be dim x dim arrays");
    m = ComplexMatrix(d, d);
    for (std::size_t i = 0; i < d; ++i) {
      if (!re[i].is_array() || !im[i].is_array() || re[i].size() != d || im[i].size() != d)
        throw FileFormatError("state file: row " + std::to_string(i) + " has wrong length");
      for (std::size_t k = 0; k < d; ++k)
        m(i, k) = Complex(re[i][k].get<double>(), im[i][k].get<double>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw FileFormatError("state file: bad value: " + std::string(e.what()));
  }
  HermitianMatrix h = HermitianMatrix::symmetrized(m, 1e-9);
  return DensityMatrix::from(h);
}

std::string state_to_json(const DensityMatrix& rho) {
  const std::size_t d = rho.dim();
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (std::size_t i = 0; i < d; ++i) {
    nlohmann::json rrow = nlohmann::json::array();
    nlohmann::json irow = nlohmann::json::array();
    for (std::size_t k = 0; k < d; ++k) {
      rrow.push_back(rho(i, k).real());
      irow.push_back(rho(i, k).imag());
    }
    re.push_back(std::move(rrow));
    im.push_back(std::move(irow));
  }
  nlohmann::json j{{"dim", d}, {"re", std::move(re)}, {"im", std::move(im)}};
  return j.dump(2);
}

void save_state_json(const DensityMatrix& rho, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("state file: cannot write " + path);
  out << state_to_json(rho) << "\n";
}

}  // namespace qcoh

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "qcoh/errors.hpp"

namespace qcoh {

using Complex = std::complex<double>;

// Dense row-major complex matrix. All dimensions in this library are desk
// scale (d <= 64), so no blocking or sparsity anywhere.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  ComplexMatrix adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
  }

  Complex trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < rows_ && i < cols_; ++i) t += (*this)(i, i);
    return t;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& z : data_) m = std::max(m, std::abs(z));
    return m;
  }

  bool all_finite() const {
    for (const auto& z : data_)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
  }

  ComplexMatrix& operator+=(const ComplexMatrix& rhs) {
    require_same_shape(rhs, "operator+=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
    return *this;
  }
  ComplexMatrix& operator-=(const ComplexMatrix& rhs) {
    require_same_shape(rhs, "operator-=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
    return *this;
  }
  ComplexMatrix& operator*=(Complex s) {
    for (auto& z : data_) z *= s;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
    a += b;
    return a;
  }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
    a -= b;
    return a;
  }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) {
    a *= s;
    return a;
  }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) {
    a *= s;
    return a;
  }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_)
      throw DimensionError("matrix product: inner dimensions differ");
    ComplexMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Complex aik = a(i, k);
        if (aik == Complex(0.0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    }
    return out;
  }

 private:
  void require_same_shape(const ComplexMatrix& rhs, const char* op) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
      throw DimensionError(std::string(op) + ": shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

// Self-adjoint square matrix. Construction symmetrizes (M + M^dag)/2 and
// rejects inputs whose asymmetry exceeds `tol` relative to the matrix scale.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;

  static HermitianMatrix zero(std::size_t n) { return HermitianMatrix(ComplexMatrix(n, n)); }
  static HermitianMatrix identity(std::size_t n) {
    return HermitianMatrix(ComplexMatrix::identity(n));
  }

  // Symmetrizing factory; `tol` is the accepted relative asymmetry.
  static HermitianMatrix symmetrized(const ComplexMatrix& m, double tol = 1e-12) {
    if (!m.is_square()) throw DimensionError("HermitianMatrix: matrix not square");
    if (!m.all_finite()) throw ValidationError("HermitianMatrix: non-finite entry");
    double asym = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = i; j < m.cols(); ++j)
        asym = std::max(asym, std::abs(m(i, j) - std::conj(m(j, i))));
    const double scale = std::max(1.0, m.max_abs());
    if (asym > tol * scale)
      throw ValidationError("HermitianMatrix: asymmetry " + std::to_string(asym) +
                            " exceeds tolerance");
    ComplexMatrix sym(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
      sym(i, i) = Complex(m(i, i).real(), 0.0);
      for (std::size_t j = i + 1; j < m.cols(); ++j) {
        const Complex v = 0.5 * (m(i, j) + std::conj(m(j, i)));
        sym(i, j) = v;
        sym(j, i) = std::conj(v);
      }
    }
    return HermitianMatrix(std::move(sym));
  }

  std::size_t dim() const { return mat_.rows(); }
  const ComplexMatrix& matrix() const { return mat_; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return mat_(i, j); }

  double trace() const { return mat_.trace().real(); }
  double max_abs() const { return mat_.max_abs(); }

  friend HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
    return HermitianMatrix(a.mat_ + b.mat_);
  }
  friend HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
    return HermitianMatrix(a.mat_ - b.mat_);
  }
  friend HermitianMatrix operator*(double s, const HermitianMatrix& a) {
    return HermitianMatrix(Complex(s) * a.mat_);
  }

 private:
  explicit HermitianMatrix(ComplexMatrix m) : mat_(std::move(m)) {}
  friend HermitianMatrix hermitian_unchecked(ComplexMatrix m);

  ComplexMatrix mat_;
};

// Internal escape hatch for matrices that are Hermitian by construction
// (spectral synthesis U f(L) U^dag); skips the asymmetry scan.
inline HermitianMatrix hermitian_unchecked(ComplexMatrix m) {
  return HermitianMatrix(std::move(m));
}

}  // namespace qcoh

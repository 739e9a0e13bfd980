#include "suncolor/linalg.hpp"

#include <cmath>

namespace suncolor {

CMatrix::CMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, cplx(0.0, 0.0)) {}

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw std::invalid_argument("CMatrix: entry count " + std::to_string(entries_.size()) +
                                " does not match shape " + shape_string());
  }
  check_finite();
}

void CMatrix::check_finite() const {
  for (const cplx& z : entries_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw std::invalid_argument("CMatrix: non-finite entry");
    }
  }
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

CMatrix& CMatrix::operator+=(const CMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw std::invalid_argument("CMatrix: shape mismatch " + shape_string() + " vs " +
                                other.shape_string());
  }
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += other.entries_[k];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw std::invalid_argument("CMatrix: shape mismatch " + shape_string() + " vs " +
                                other.shape_string());
  }
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= other.entries_[k];
  return *this;
}

CMatrix& CMatrix::operator*=(cplx scalar) {
  for (cplx& z : entries_) z *= scalar;
  return *this;
}

CMatrix CMatrix::dagger() const {
  CMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out.at(j, i) = std::conj(at(i, j));
  return out;
}

cplx CMatrix::trace() const {
  if (rows_ != cols_) {
    throw std::invalid_argument("CMatrix::trace: non-square matrix " + shape_string());
  }
  cplx t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += at(i, i);
  return t;
}

double CMatrix::max_abs() const {
  double m = 0.0;
  for (const cplx& z : entries_) m = std::max(m, std::abs(z));
  return m;
}

double CMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const cplx& z : entries_) s += std::norm(z);
  return std::sqrt(s);
}

std::string CMatrix::shape_string() const {
  return std::to_string(rows_) + "x" + std::to_string(cols_);
}

CMatrix operator+(CMatrix a, const CMatrix& b) {
  a += b;
  return a;
}

CMatrix operator-(CMatrix a, const CMatrix& b) {
  a -= b;
  return a;
}

CMatrix operator*(cplx scalar, CMatrix m) {
  m *= scalar;
  return m;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) { return matmul(a, b); }

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("matmul: dimension mismatch " + a.shape_string() + " * " +
                                b.shape_string());
  }
  CMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a.at(i, k);
      if (aik == cplx(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out.at(i, j) += aik * b.at(k, j);
    }
  }
  return out;
}

static void require_square_pair(const CMatrix& a, const CMatrix& b, const char* op) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw std::invalid_argument(std::string(op) + ": need equal square matrices, got " +
                                a.shape_string() + " and " + b.shape_string());
  }
}

CMatrix commutator(const CMatrix& a, const CMatrix& b) {
  require_square_pair(a, b, "commutator");
  return matmul(a, b) - matmul(b, a);
}

CMatrix anticommutator(const CMatrix& a, const CMatrix& b) {
  require_square_pair(a, b, "anticommutator");
  return matmul(a, b) + matmul(b, a);
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("max_abs_diff: shape mismatch " + a.shape_string() + " vs " +
                                b.shape_string());
  }
  double m = 0.0;
  for (std::size_t k = 0; k < a.entries().size(); ++k)
    m = std::max(m, std::abs(a.entries()[k] - b.entries()[k]));
  return m;
}

bool approx_equal(const CMatrix& a, const CMatrix& b, double tol) {
  const double scale = 1.0 + std::max(a.max_abs(), b.max_abs());
  return max_abs_diff(a, b) <= tol * scale;
}

}  // namespace suncolor

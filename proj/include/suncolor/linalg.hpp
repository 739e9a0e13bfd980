#ifndef SUNCOLOR_LINALG_HPP
#define SUNCOLOR_LINALG_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace suncolor {

using cplx = std::complex<double>;

/// Raised when a computed object violates a structural guarantee
/// (broken tensor symmetry, a Casimir sum that is not proportional
/// to the identity, ...).  Plain dimension/argument problems use
/// std::invalid_argument instead.
struct IntegrityError : std::runtime_error {
  explicit IntegrityError(const std::string& what) : std::runtime_error(what) {}
};

/// Dense complex matrix, row-major.  Entries are validated to be finite
/// on construction.  Instances are immutable by convention once built
/// (operations return new matrices), so they can be shared freely.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols);
  CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

  static CMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  cplx& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const cplx& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  const std::vector<cplx>& entries() const { return entries_; }

  CMatrix& operator+=(const CMatrix& other);
  CMatrix& operator-=(const CMatrix& other);
  CMatrix& operator*=(cplx scalar);

  /// Hermitian conjugate.  Exact involution: dagger(dagger(m)) == m bitwise.
  CMatrix dagger() const;

  /// Sum of diagonal entries; requires a square matrix.
  cplx trace() const;

  /// Largest |entry|.
  double max_abs() const;
  double frobenius_norm() const;

  std::string shape_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> entries_;

  void check_finite() const;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(cplx scalar, CMatrix m);
CMatrix operator*(const CMatrix& a, const CMatrix& b);

/// Standard matrix product; throws std::invalid_argument naming both
/// shapes when the inner dimensions disagree.
CMatrix matmul(const CMatrix& a, const CMatrix& b);

/// ab - ba and ab + ba; both require square matrices of equal size.
CMatrix commutator(const CMatrix& a, const CMatrix& b);
CMatrix anticommutator(const CMatrix& a, const CMatrix& b);

double max_abs_diff(const CMatrix& a, const CMatrix& b);

/// Tolerance-based equality: max-abs entry difference bounded by
/// tol * (1 + larger of the two operand max-abs entries).
bool approx_equal(const CMatrix& a, const CMatrix& b, double tol = 1e-10);

}  // namespace suncolor

#endif

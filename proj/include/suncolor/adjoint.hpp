#ifndef SUNCOLOR_ADJOINT_HPP
#define SUNCOLOR_ADJOINT_HPP

#include "suncolor/basis.hpp"

namespace suncolor {

/// Adjoint-representation matrices built from the extracted tensors:
/// (F^a)_bc = -i f_abc (Hermitian, purely imaginary entries) and
/// (D^a)_bc = d_abc (real symmetric, traceless).  Labels 1-based.
class AdjointSet {
 public:
  AdjointSet(int n, std::vector<CMatrix> f_matrices, std::vector<CMatrix> d_matrices);

  int n() const { return n_; }
  int dim() const { return n_ * n_ - 1; }

  const CMatrix& F(int a) const;
  const CMatrix& D(int a) const;
  const std::vector<CMatrix>& F_all() const { return f_; }
  const std::vector<CMatrix>& D_all() const { return d_; }

 private:
  int n_;
  std::vector<CMatrix> f_;
  std::vector<CMatrix> d_;
};

/// Materializes F^a and D^a from f and d (which must share the same N)
/// and asserts the structural invariants of both families.
AdjointSet build_adjoint(const Rank3Tensor& f, const Rank3Tensor& d, double tol = 1e-10);

struct AdjointCasimirs {
  Rational c_a;        // sum_a F^a F^a = C_A * I with C_A = N
  Rational dd_scalar;  // sum_a D^a D^a = (N^2-4)/N * I
  double fd_residual;  // max |(sum_a F^a D^a)_bc|, expected 0
};

/// Verifies the three quadratic adjoint sums; IntegrityError names the
/// identity on any proportionality failure.
AdjointCasimirs adjoint_casimirs(const AdjointSet& adj, double tol = 1e-10);

}  // namespace suncolor

#endif

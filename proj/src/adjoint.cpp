#include "suncolor/adjoint.hpp"

#include <cmath>
#include <string>

namespace suncolor {

AdjointSet::AdjointSet(int n, std::vector<CMatrix> f_matrices, std::vector<CMatrix> d_matrices)
    : n_(n), f_(std::move(f_matrices)), d_(std::move(d_matrices)) {
  if (n_ < 2) throw std::invalid_argument("AdjointSet: n must be >= 2");
  const std::size_t expect = static_cast<std::size_t>(dim());
  if (f_.size() != expect || d_.size() != expect) {
    throw std::invalid_argument("AdjointSet: expected " + std::to_string(expect) +
                                " matrices per family");
  }
}

const CMatrix& AdjointSet::F(int a) const {
  if (a < 1 || a > dim()) throw std::invalid_argument("AdjointSet::F: label out of range");
  return f_[static_cast<std::size_t>(a - 1)];
}

const CMatrix& AdjointSet::D(int a) const {
  if (a < 1 || a > dim()) throw std::invalid_argument("AdjointSet::D: label out of range");
  return d_[static_cast<std::size_t>(a - 1)];
}

AdjointSet build_adjoint(const Rank3Tensor& f, const Rank3Tensor& d, double tol) {
  if (f.n() != d.n()) {
    throw std::invalid_argument("build_adjoint: tensor sizes disagree, f has n=" +
                                std::to_string(f.n()) + ", d has n=" + std::to_string(d.n()));
  }
  if (f.symmetry() != TensorSymmetry::antisymmetric ||
      d.symmetry() != TensorSymmetry::symmetric) {
    throw std::invalid_argument("build_adjoint: expected (antisymmetric f, symmetric d)");
  }
  const int dim = f.dim();
  const std::size_t dd = static_cast<std::size_t>(dim);
  std::vector<CMatrix> fm, dm;
  fm.reserve(dd);
  dm.reserve(dd);
  for (int a = 1; a <= dim; ++a) {
    CMatrix fa(dd, dd), da(dd, dd);
    for (int b = 1; b <= dim; ++b) {
      for (int c = 1; c <= dim; ++c) {
        fa.at(b - 1, c - 1) = cplx(0.0, -f.get(a, b, c));
        da.at(b - 1, c - 1) = d.get(a, b, c);
      }
    }
    // F^a must be Hermitian with purely imaginary entries; D^a real
    // symmetric traceless.  Violations mean the input tensors are broken.
    if (max_abs_diff(fa, fa.dagger()) > tol) {
      throw IntegrityError("build_adjoint: F^" + std::to_string(a) + " is not Hermitian");
    }
    if (max_abs_diff(da, da.dagger()) > tol) {
      throw IntegrityError("build_adjoint: D^" + std::to_string(a) + " is not real symmetric");
    }
    if (std::abs(da.trace()) > tol) {
      throw IntegrityError("build_adjoint: Tr D^" + std::to_string(a) + " is nonzero");
    }
    fm.push_back(std::move(fa));
    dm.push_back(std::move(da));
  }
  return AdjointSet(f.n(), std::move(fm), std::move(dm));
}

AdjointCasimirs adjoint_casimirs(const AdjointSet& adj, double tol) {
  const std::size_t dim = static_cast<std::size_t>(adj.dim());
  CMatrix ff(dim, dim), dd(dim, dim), fd(dim, dim);
  for (int a = 1; a <= adj.dim(); ++a) {
    ff += matmul(adj.F(a), adj.F(a));
    dd += matmul(adj.D(a), adj.D(a));
    fd += matmul(adj.F(a), adj.D(a));
  }
  const long long n = adj.n();
  const Rational c_a(n);
  const Rational dd_scalar(n * n - 4, n);

  CMatrix ff_expect = CMatrix::identity(dim);
  ff_expect *= cplx(c_a.to_double(), 0.0);
  if (!approx_equal(ff, ff_expect, tol)) {
    throw IntegrityError("adjoint_casimirs: sum_a F^a F^a != N * I, deviation " +
                         std::to_string(max_abs_diff(ff, ff_expect)));
  }
  CMatrix dd_expect = CMatrix::identity(dim);
  dd_expect *= cplx(dd_scalar.to_double(), 0.0);
  if (!approx_equal(dd, dd_expect, tol)) {
    throw IntegrityError("adjoint_casimirs: sum_a D^a D^a != (N^2-4)/N * I, deviation " +
                         std::to_string(max_abs_diff(dd, dd_expect)));
  }
  const double fd_residual = fd.max_abs();
  if (fd_residual > tol * (1.0 + ff.max_abs())) {
    throw IntegrityError("adjoint_casimirs: sum_a F^a D^a != 0, deviation " +
                         std::to_string(fd_residual));
  }
  return {c_a, dd_scalar, fd_residual};
}

}  // namespace suncolor

#ifndef SUNCOLOR_BASIS_HPP
#define SUNCOLOR_BASIS_HPP

#include <array>
#include <map>
#include <utility>
#include <vector>

#include "suncolor/linalg.hpp"
#include "suncolor/rational.hpp"

namespace suncolor {

/// The N^2-1 traceless Hermitian generators of the defining
/// representation, normalized to Tr(T^a T^b) = delta_ab / 2.
/// Generator labels are 1-based throughout.
class GeneratorBasis {
 public:
  GeneratorBasis(int n, std::vector<CMatrix> generators);

  int n() const { return n_; }
  int dim() const { return n_ * n_ - 1; }

  const CMatrix& generator(int a) const;  // a in 1..dim()
  const std::vector<CMatrix>& generators() const { return gens_; }

 private:
  int n_;
  std::vector<CMatrix> gens_;
};

/// Generalized Gell-Mann construction.  The label order reproduces the
/// Pauli matrices over two at n=2 and the standard Gell-Mann matrices
/// over two at n=3: for each column j = 2..n the symmetric and
/// antisymmetric pair for every row i < j, followed by the diagonal
/// generator diag(1,..,1,-(j-1),0,..,0)/sqrt(2(j-1)j).
GeneratorBasis build_basis(int n);

enum class TensorSymmetry { antisymmetric, symmetric };

/// Sparse totally antisymmetric (f) or totally symmetric (d) rank-3
/// tensor over adjoint labels 1..n^2-1.  Only canonically ordered index
/// triples are stored (a < b < c for antisymmetric, a <= b <= c for
/// symmetric); lookups resolve permutations, with the permutation sign
/// applied in the antisymmetric case.
class Rank3Tensor {
 public:
  Rank3Tensor(int n, TensorSymmetry symmetry);

  int n() const { return n_; }
  int dim() const { return n_ * n_ - 1; }
  TensorSymmetry symmetry() const { return sym_; }

  double get(int a, int b, int c) const;
  void set(int a, int b, int c, double value);

  const std::map<std::array<int, 3>, double>& nonzeros() const { return entries_; }
  std::size_t nonzero_count() const { return entries_.size(); }

  /// All ordered pairs (b, c) with tensor(a, b, c) nonzero for a fixed
  /// first label; the workhorse for sparse contraction loops.
  std::vector<std::pair<std::array<int, 2>, double>> nonzeros_with_first(int a) const;

  friend bool operator==(const Rank3Tensor& x, const Rank3Tensor& y) {
    return x.n_ == y.n_ && x.sym_ == y.sym_ && x.entries_ == y.entries_;
  }

 private:
  int n_;
  TensorSymmetry sym_;
  std::map<std::array<int, 3>, double> entries_;

  void check_range(int a, int b, int c) const;
};

/// f_abc = -2i Tr([T^a, T^b] T^c).  Values computed from several index
/// orders are cross-checked against total antisymmetry; a violation
/// above tol raises IntegrityError.  |value| < prune is dropped.
Rank3Tensor extract_f(const GeneratorBasis& basis, double tol = 1e-10, double prune = 1e-13);

/// d_abc = 2 Tr({T^a, T^b} T^c), totally symmetric.
Rank3Tensor extract_d(const GeneratorBasis& basis, double tol = 1e-10, double prune = 1e-13);

/// (sum_a T^a T^a, C_F) with C_F = (N^2-1)/(2N); raises IntegrityError
/// if the sum is not proportional to the identity within tol.
std::pair<CMatrix, Rational> casimir2_defining(const GeneratorBasis& basis, double tol = 1e-10);

/// (sum_abc d_abc T^a T^b T^c, C_3F) with C_3F = (N^2-1)(N^2-4)/(4N^2).
std::pair<CMatrix, Rational> casimir3_defining(const GeneratorBasis& basis, const Rank3Tensor& d,
                                               double tol = 1e-10);

}  // namespace suncolor

#endif

#ifndef SUNCOLOR_ORACLE_HPP
#define SUNCOLOR_ORACLE_HPP

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "suncolor/adjoint.hpp"
#include "suncolor/expr.hpp"

namespace suncolor {

/// Per-N evaluation cache: generator basis, extracted tensors, adjoint
/// matrices, dense tensor cubes and memoized trace values.  Instances
/// are immutable apart from the internal trace memo (guarded by a
/// mutex), so repeated evaluations are bit-identical and contexts can
/// be shared.
class OracleContext {
 public:
  explicit OracleContext(int n);

  int n() const { return n_; }
  int dim() const { return n_ * n_ - 1; }

  const GeneratorBasis& basis() const { return basis_; }
  const Rank3Tensor& f() const { return f_; }
  const Rank3Tensor& d() const { return d_; }
  const AdjointSet& adjoint() const { return adjoint_; }

  double f_at(int a, int b, int c) const { return f_cube_[cube_offset(a, b, c)]; }
  double d_at(int a, int b, int c) const { return d_cube_[cube_offset(a, b, c)]; }

  /// Memoized Tr(T^{w1} T^{w2} ...) over the defining representation.
  cplx trace_def(const std::vector<int>& word) const;
  /// Memoized trace of an adjoint word; entries encode kind and label.
  cplx trace_adj(const std::vector<std::pair<AdjKind, int>>& word) const;

  /// Process-wide shared cache, built once per N.
  static std::shared_ptr<const OracleContext> get(int n);

 private:
  int n_;
  GeneratorBasis basis_;
  Rank3Tensor f_;
  Rank3Tensor d_;
  AdjointSet adjoint_;
  std::vector<double> f_cube_;
  std::vector<double> d_cube_;

  mutable std::mutex memo_mutex_;
  mutable std::map<std::vector<int>, cplx> def_trace_memo_;
  mutable std::map<std::vector<int>, cplx> adj_trace_memo_;

  std::size_t cube_offset(int a, int b, int c) const {
    const std::size_t d = static_cast<std::size_t>(dim());
    return (static_cast<std::size_t>(a - 1) * d + static_cast<std::size_t>(b - 1)) * d +
           static_cast<std::size_t>(c - 1);
  }
};

/// Brute-force evaluation of an expression at concrete N: every bound
/// index is summed over its full range (with zero-valued tensor branches
/// pruned), deltas compare values, element factors read matrix entries,
/// traces multiply explicit matrices, and coefficients are evaluated
/// exactly at N before conversion to floating point.
///
/// The assignment must cover exactly the free indices of the expression,
/// each within its sort's range (1..N fundamental, 1..N^2-1 adjoint).
cplx oracle_eval(const ColorExpr& expr, int n, const std::map<std::string, int>& assignment);

struct SampleWitness {
  int n = 0;
  std::map<std::string, int> assignment;
  double residual = 0.0;
  cplx lhs{0.0, 0.0};
  cplx rhs{0.0, 0.0};
};

struct SamplingVerdict {
  bool equal = true;
  SampleWitness worst;
};

/// Deterministic random sampling of free-index assignments per N;
/// residuals are |va - vb| / (1 + max(|va|, |vb|)).
SamplingVerdict equal_by_sampling(const ColorExpr& a, const ColorExpr& b,
                                  const std::vector<int>& n_set, int samples, double tol,
                                  unsigned long long seed);

}  // namespace suncolor

#endif

#ifndef SUNCOLOR_VERIFY_HPP
#define SUNCOLOR_VERIFY_HPP

#include <functional>
#include <iosfwd>
#include <string>

#include "suncolor/adjoint.hpp"
#include "suncolor/expr.hpp"

namespace suncolor {

enum class CheckStatus { pass, fail, skipped };

const char* status_name(CheckStatus s);

struct CheckResult {
  std::string id;
  CheckStatus status = CheckStatus::skipped;
  double max_residual = 0.0;
  long long tuples_checked = 0;
  double seconds = 0.0;
};

struct IdentityReport {
  int n = 0;
  double tolerance = 0.0;
  long long sample_budget = 0;
  unsigned long long seed = 0;
  std::vector<CheckResult> results;

  bool all_passed() const;
};

struct CheckParams {
  long long sample_budget = 20000;
  unsigned long long seed = 0;
  bool force_exhaustive = false;
};

struct CheckOutcome {
  double max_residual = 0.0;
  long long tuples = 0;
};

/// Per-N workspace shared by the checks: basis, tensors, adjoint
/// matrices, dense tensor cubes and cached pair products.
class VerifyContext {
 public:
  explicit VerifyContext(int n);

  int n() const { return n_; }
  int dim() const { return dim_; }

  const GeneratorBasis& basis() const { return basis_; }
  const Rank3Tensor& f_tensor() const { return f_; }
  const Rank3Tensor& d_tensor() const { return d_; }
  const AdjointSet& adjoint() const { return adj_; }

  const CMatrix& T(int a) const { return basis_.generator(a); }
  const CMatrix& F(int a) const { return adj_.F(a); }
  const CMatrix& D(int a) const { return adj_.D(a); }

  double fv(int a, int b, int c) const { return f_cube_[offset(a, b, c)]; }
  double dv(int a, int b, int c) const { return d_cube_[offset(a, b, c)]; }

  const std::vector<std::pair<std::array<int, 2>, double>>& f_first(int a) const {
    return f_first_[static_cast<std::size_t>(a - 1)];
  }
  const std::vector<std::pair<std::array<int, 2>, double>>& d_first(int a) const {
    return d_first_[static_cast<std::size_t>(a - 1)];
  }

  /// T^a T^b, cached.
  const CMatrix& TT(int a, int b) const;
  /// Adjoint pair products X^a Y^b for X,Y in {F,D}; the full table for
  /// a kind pair is materialized on first use.
  const CMatrix& pair(AdjKind x, AdjKind y, int a, int b) const;

 private:
  int n_;
  int dim_;
  GeneratorBasis basis_;
  Rank3Tensor f_;
  Rank3Tensor d_;
  AdjointSet adj_;
  std::vector<double> f_cube_, d_cube_;
  std::vector<std::vector<std::pair<std::array<int, 2>, double>>> f_first_, d_first_;
  mutable std::vector<CMatrix> tt_;
  mutable std::array<std::vector<CMatrix>, 4> adj_pairs_;

  std::size_t offset(int a, int b, int c) const {
    const std::size_t d = static_cast<std::size_t>(dim_);
    return (static_cast<std::size_t>(a - 1) * d + static_cast<std::size_t>(b - 1)) * d +
           static_cast<std::size_t>(c - 1);
  }
};

/// A registered identity check.  `sampled` marks the four-index trace
/// checks that run over random quadruples at N >= 4; everything else is
/// exhaustive at every N.  `only_n` = 0 means applicable at every N.
struct IdentityCheck {
  std::string id;
  std::string anchor;  // one-line formula the check enforces
  bool sampled = false;
  int only_n = 0;
  std::function<CheckOutcome(const VerifyContext&, const CheckParams&)> run;
};

const std::vector<IdentityCheck>& registry();

/// Runs every applicable check; four-index trace checks are exhaustive
/// for N <= 3 and sampled with `sample_budget` quadruples otherwise.
/// A failed check is a report entry, never an exception.
IdentityReport run_suite(int n, double tolerance, long long sample_budget,
                         unsigned long long seed);

/// Runs one check exhaustively regardless of its cost class; throws
/// std::invalid_argument for an unknown id.
std::pair<CheckStatus, double> check_one(const std::string& id, int n, double tolerance);

/// report v1, structured text: one line per check.
void print_report(std::ostream& out, const IdentityReport& report);
/// report v1, machine-readable JSON document with the same fields.
void print_report_json(std::ostream& out, const IdentityReport& report);

/// Regression probes for the two deliberately rejected variants: the
/// misindexed right-hand side -T^a/(2N) of the cubic reduction, and the
/// 1/2 coefficient on the i N d f term of the FDDD trace.  Both return
/// the max normalized residual of the wrong form (expected to be large).
double eq13_misindexed_residual(int n);
double eq66_half_coefficient_residual(int n);

}  // namespace suncolor

#endif

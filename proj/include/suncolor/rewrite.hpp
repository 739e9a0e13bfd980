#ifndef SUNCOLOR_REWRITE_HPP
#define SUNCOLOR_REWRITE_HPP

#include "suncolor/expr.hpp"

namespace suncolor {

/// One rewrite step, for the optional audit trail.  Replaying the
/// recorded steps from the input reproduces the output.
struct RuleApplication {
  std::string rule_id;
  std::size_t term_index;    // input term this work descends from
  std::size_t factor_index;  // first factor touched
  std::string before;        // the rewritten term
  std::string after;         // replacement terms, "+"-joined
};

struct RewriteOptions {
  /// Opt-in contraction pack valid only at N = 3; it replaces the
  /// generic ff-pair elimination with the N=3 dd-pair reduction, so the
  /// output is sound only when evaluated at N = 3.
  bool n3_pack = false;
  /// Expanding rules stop once one input term has this many live
  /// descendants; the offending pair is then left in normal form.
  int blowup_cap = 64;
  std::vector<RuleApplication>* log = nullptr;
};

/// Eliminates every defining-representation trace and every bound
/// adjoint index shared between T-structures: traces of length >= 3 are
/// peeled with the generator product rule, short traces close to deltas,
/// repeated adjoint labels on T's are removed with the completeness
/// identity, element chains contract, element loops become traces.
ColorExpr reduce_defining(const ColorExpr& expr, const RewriteOptions& opts = {});

/// Replaces every adjoint trace and F/D matrix element by explicit f/d
/// tensors with fresh bound chain indices.
ColorExpr expand_adjoint(const ColorExpr& expr, const RewriteOptions& opts = {});

/// Fixpoint application of the tensor contraction rules: Kronecker
/// substitution, double contractions, closed three-tensor cycles, and
/// (as a last resort) the ff-pair expansion into deltas and d-pairs.
/// Requires an expression free of TrDef/TrAdj factors.
ColorExpr contract(const ColorExpr& expr, const RewriteOptions& opts = {});

/// reduce_defining -> expand_adjoint -> contract -> canonicalize,
/// iterated to a fixpoint.  Total on well-formed input and guaranteed
/// to terminate; the result is a sum of delta/f/d/T-element structures
/// with exact coefficients.
ColorExpr simplify(const ColorExpr& expr, const RewriteOptions& opts = {});

}  // namespace suncolor

#endif

#ifndef SUNCOLOR_EXPR_HPP
#define SUNCOLOR_EXPR_HPP

#include <array>
#include <compare>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "suncolor/npoly.hpp"

namespace suncolor {

enum class IndexSort { fundamental, adjoint };

/// A labelled summation/free index.  Fundamental indices range over
/// 1..N, adjoint indices over 1..N^2-1.  A label occurring twice in a
/// term is bound (Einstein summation), once is free.
struct Index {
  IndexSort sort = IndexSort::adjoint;
  std::string name;
  auto operator<=>(const Index&) const = default;
};

inline Index adj(std::string name) { return {IndexSort::adjoint, std::move(name)}; }
inline Index fund(std::string name) { return {IndexSort::fundamental, std::move(name)}; }

enum class AdjKind { F, D };

struct Delta {
  Index a, b;
  auto operator<=>(const Delta&) const = default;
};
struct F3 {
  std::array<Index, 3> idx;
  auto operator<=>(const F3&) const = default;
};
struct D3 {
  std::array<Index, 3> idx;
  auto operator<=>(const D3&) const = default;
};
struct TElem {
  Index a;         // adjoint label
  Index row, col;  // fundamental labels
  auto operator<=>(const TElem&) const = default;
};
struct FElem {
  Index a;
  Index row, col;  // adjoint labels
  auto operator<=>(const FElem&) const = default;
};
struct DElem {
  Index a;
  Index row, col;
  auto operator<=>(const DElem&) const = default;
};
struct TrDef {
  std::vector<Index> word;  // Tr[T(w1) T(w2) ...]
  auto operator<=>(const TrDef&) const = default;
};
struct TrAdj {
  std::vector<std::pair<AdjKind, Index>> word;  // TrAdj[F(..) D(..) ...]
  auto operator<=>(const TrAdj&) const = default;
};

/// Alternative order realizes the factor total order
/// Delta < F3 < D3 < TElem < FElem < DElem < TrDef < TrAdj.
using Factor = std::variant<Delta, F3, D3, TElem, FElem, DElem, TrDef, TrAdj>;

struct Term {
  NPoly coeff;
  std::vector<Factor> factors;
};

struct ColorExpr {
  std::vector<Term> terms;

  bool is_zero() const { return terms.empty(); }
};

bool operator==(const Term& x, const Term& y);
bool operator==(const ColorExpr& x, const ColorExpr& y);

struct ParseError : std::runtime_error {
  std::size_t position;
  ParseError(const std::string& what, std::size_t pos)
      : std::runtime_error(what + " (at position " + std::to_string(pos) + ")"),
        position(pos) {}
};

/// Parses the color-expression grammar:
///   expr   := ['-'] term (('+'|'-') term)*
///   term   := atom (('*'|'/') atom)*      atoms are coefficients or factors
///   coeff  := rational | "i" | "NN" | "(" coefficient arithmetic ")"
///   factor := delta(i,j) | f(a,b,c) | d(a,b,c) | T(a;i,j) | F(a;b,c)
///           | D(a;b,c) | Tr[T(a)T(b)...] | TrAdj[F(a)D(b)...]
/// Indices are sort-checked (T row/column slots and their delta partners
/// are fundamental, everything else adjoint; an unconstrained delta is
/// adjoint).  Bound labels are renamed to serial names in first-occurrence
/// order.  Errors carry the input position.
ColorExpr parse(std::string_view text);

/// Canonical printer; output re-parses to the identical expression.
std::string print(const ColorExpr& expr);
std::string print(const Term& term);
std::string print(const Factor& factor);

/// Sorts f/d slots (tracking the permutation sign for f), rotates trace
/// words to their minimal rotation, orders factors by the factor total
/// order, renumbers bound labels, merges like terms exactly and drops
/// zeros.  Idempotent and value-preserving.
ColorExpr canonicalize(const ColorExpr& expr);

/// True for all-digit labels: concrete index values ("f(1,2,3)").
/// Constant indices are never summed, never renamed and are exempt from
/// the two-occurrence rule and the free-set comparison.
bool is_constant_index(std::string_view name);

/// Per-term label census.
struct TermIndexInfo {
  std::map<std::string, int> counts;
  std::map<std::string, IndexSort> sorts;

  bool is_bound(const std::string& name) const {
    auto it = counts.find(name);
    return it != counts.end() && it->second == 2 && !is_constant_index(name);
  }
};

TermIndexInfo analyze_term(const Term& term);

/// Free labels (name -> sort) of the whole expression; throws
/// ParseError on inconsistent free sets or a label used 3+ times.
std::map<std::string, IndexSort> free_indices(const ColorExpr& expr);

/// Structural validation used by parse() and available to code that
/// builds expressions directly.
void validate(const ColorExpr& expr);

/// All slots of a factor, in slot order, with write access for renaming.
std::vector<Index*> factor_slots(Factor& f);
std::vector<const Index*> factor_slots(const Factor& f);

}  // namespace suncolor

#endif

#ifndef SUNCOLOR_TESTS_TEST_UTIL_HPP
#define SUNCOLOR_TESTS_TEST_UTIL_HPP

#include <map>
#include <string>

#include "suncolor/expr.hpp"

namespace suncolor::testutil {

// Parses an expected normal form and pins the free-index sorts to those
// of the expression it will be compared against (a bare delta in the
// expected text would otherwise default its indices to adjoint).
inline ColorExpr golden_with_sorts(const std::string& text,
                                   const std::map<std::string, IndexSort>& sorts) {
  ColorExpr e = parse(text);
  for (Term& term : e.terms) {
    for (Factor& f : term.factors) {
      for (Index* slot : factor_slots(f)) {
        const auto it = sorts.find(slot->name);
        if (it != sorts.end()) slot->sort = it->second;
      }
    }
  }
  validate(e);
  return canonicalize(e);
}

}  // namespace suncolor::testutil

#endif

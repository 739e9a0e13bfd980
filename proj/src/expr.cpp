#include "suncolor/expr.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>

namespace suncolor {

bool operator==(const Term& x, const Term& y) {
  return x.coeff == y.coeff && x.factors == y.factors;
}

bool is_constant_index(std::string_view name) {
  if (name.empty()) return false;
  for (const char c : name) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

bool operator==(const ColorExpr& x, const ColorExpr& y) { return x.terms == y.terms; }

// ---------------------------------------------------------------------------
// Slot access
// ---------------------------------------------------------------------------

std::vector<Index*> factor_slots(Factor& f) {
  std::vector<Index*> out;
  std::visit(
      [&out](auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Delta>) {
          out = {&node.a, &node.b};
        } else if constexpr (std::is_same_v<T, F3> || std::is_same_v<T, D3>) {
          out = {&node.idx[0], &node.idx[1], &node.idx[2]};
        } else if constexpr (std::is_same_v<T, TElem> || std::is_same_v<T, FElem> ||
                             std::is_same_v<T, DElem>) {
          out = {&node.a, &node.row, &node.col};
        } else if constexpr (std::is_same_v<T, TrDef>) {
          for (auto& idx : node.word) out.push_back(&idx);
        } else {
          for (auto& [kind, idx] : node.word) out.push_back(&idx);
        }
      },
      f);
  return out;
}

std::vector<const Index*> factor_slots(const Factor& f) {
  std::vector<const Index*> out;
  for (Index* p : factor_slots(const_cast<Factor&>(f))) out.push_back(p);
  return out;
}

// ---------------------------------------------------------------------------
// Printer
// ---------------------------------------------------------------------------

std::string print(const Factor& factor) {
  return std::visit(
      [](const auto& node) -> std::string {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Delta>) {
          return "delta(" + node.a.name + "," + node.b.name + ")";
        } else if constexpr (std::is_same_v<T, F3>) {
          return "f(" + node.idx[0].name + "," + node.idx[1].name + "," + node.idx[2].name + ")";
        } else if constexpr (std::is_same_v<T, D3>) {
          return "d(" + node.idx[0].name + "," + node.idx[1].name + "," + node.idx[2].name + ")";
        } else if constexpr (std::is_same_v<T, TElem>) {
          return "T(" + node.a.name + ";" + node.row.name + "," + node.col.name + ")";
        } else if constexpr (std::is_same_v<T, FElem>) {
          return "F(" + node.a.name + ";" + node.row.name + "," + node.col.name + ")";
        } else if constexpr (std::is_same_v<T, DElem>) {
          return "D(" + node.a.name + ";" + node.row.name + "," + node.col.name + ")";
        } else if constexpr (std::is_same_v<T, TrDef>) {
          std::string s = "Tr[";
          for (const Index& idx : node.word) s += "T(" + idx.name + ")";
          return s + "]";
        } else {
          std::string s = "TrAdj[";
          for (const auto& [kind, idx] : node.word) {
            s += kind == AdjKind::F ? "F(" : "D(";
            s += idx.name + ")";
          }
          return s + "]";
        }
      },
      factor);
}

namespace {

std::string print_term_body(const NPoly& coeff, const std::vector<Factor>& factors) {
  std::string out;
  if (factors.empty()) return coeff.str();
  if (!coeff.is_one()) out = coeff.str() + "*";
  bool first = true;
  for (const Factor& f : factors) {
    if (!first) out += "*";
    out += print(f);
    first = false;
  }
  return out;
}

}  // namespace

std::string print(const Term& term) { return print_term_body(term.coeff, term.factors); }

std::string print(const ColorExpr& expr) {
  if (expr.terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const Term& t : expr.terms) {
    const bool neg = t.coeff.display_negative();
    const NPoly shown = neg ? -t.coeff : t.coeff;
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    out += print_term_body(shown, t.factors);
    first = false;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sort resolution and validation
// ---------------------------------------------------------------------------

namespace {

enum class SortState { unknown, fundamental, adjoint };

SortState to_state(IndexSort s) {
  return s == IndexSort::fundamental ? SortState::fundamental : SortState::adjoint;
}

// Sorts fixed by the slot position of every non-delta factor.
void collect_typed_constraints(const Factor& f, std::map<std::string, SortState>& sorts,
                               const char* context) {
  auto impose = [&](const std::string& name, IndexSort s) {
    if (is_constant_index(name)) return;  // concrete values take each slot's sort
    SortState& st = sorts[name];
    if (st == SortState::unknown) {
      st = to_state(s);
    } else if (st != to_state(s)) {
      throw ParseError("sort mismatch for index '" + name + "' in " + context, 0);
    }
  };
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Delta>) {
          // handled by propagation
        } else if constexpr (std::is_same_v<T, F3> || std::is_same_v<T, D3>) {
          for (const Index& idx : node.idx) impose(idx.name, IndexSort::adjoint);
        } else if constexpr (std::is_same_v<T, TElem>) {
          impose(node.a.name, IndexSort::adjoint);
          impose(node.row.name, IndexSort::fundamental);
          impose(node.col.name, IndexSort::fundamental);
        } else if constexpr (std::is_same_v<T, FElem> || std::is_same_v<T, DElem>) {
          impose(node.a.name, IndexSort::adjoint);
          impose(node.row.name, IndexSort::adjoint);
          impose(node.col.name, IndexSort::adjoint);
        } else if constexpr (std::is_same_v<T, TrDef>) {
          for (const Index& idx : node.word) impose(idx.name, IndexSort::adjoint);
        } else {
          for (const auto& [kind, idx] : node.word) impose(idx.name, IndexSort::adjoint);
        }
      },
      f);
}

// One term's name -> sort map: typed slots, then equal-sort propagation
// through deltas; still-unknown names may be pre-seeded by the caller.
bool propagate_delta_sorts(const Term& term, std::map<std::string, SortState>& sorts) {
  bool changed = false;
  bool again = true;
  while (again) {
    again = false;
    for (const Factor& f : term.factors) {
      if (!std::holds_alternative<Delta>(f)) continue;
      const Delta& del = std::get<Delta>(f);
      if (is_constant_index(del.a.name) || is_constant_index(del.b.name)) continue;
      SortState& sa = sorts[del.a.name];
      SortState& sb = sorts[del.b.name];
      if (sa != SortState::unknown && sb == SortState::unknown) {
        sb = sa;
        again = changed = true;
      } else if (sb != SortState::unknown && sa == SortState::unknown) {
        sa = sb;
        again = changed = true;
      } else if (sa != SortState::unknown && sa != sb) {
        throw ParseError("sort mismatch between delta indices '" + del.a.name + "' and '" +
                             del.b.name + "'",
                         0);
      }
    }
  }
  return changed;
}

void apply_sorts(Term& term, const std::map<std::string, SortState>& sorts) {
  for (Factor& f : term.factors) {
    for (Index* slot : factor_slots(f)) {
      if (is_constant_index(slot->name)) continue;
      const auto it = sorts.find(slot->name);
      if (it != sorts.end() && it->second != SortState::unknown) {
        slot->sort =
            it->second == SortState::fundamental ? IndexSort::fundamental : IndexSort::adjoint;
      }
    }
  }
}

std::map<std::string, int> name_counts(const Term& term) {
  std::map<std::string, int> counts;
  for (const Factor& f : term.factors) {
    for (const Index* slot : factor_slots(f)) ++counts[slot->name];
  }
  return counts;
}

// Resolves sorts across the whole expression (free labels shared between
// terms propagate their sort), validates occurrence counts and free-set
// consistency.  Mutates slot sorts in place.
void resolve_and_validate(ColorExpr& expr) {
  std::vector<std::map<std::string, SortState>> term_sorts(expr.terms.size());
  for (std::size_t t = 0; t < expr.terms.size(); ++t) {
    for (const Factor& f : expr.terms[t].factors) {
      collect_typed_constraints(f, term_sorts[t], "term");
    }
    propagate_delta_sorts(expr.terms[t], term_sorts[t]);
  }

  // Cross-term agreement for shared labels (relevant for free indices
  // whose sort is only pinned down in one of the terms).
  bool changed = true;
  while (changed) {
    changed = false;
    std::map<std::string, SortState> global;
    for (const auto& sorts : term_sorts) {
      for (const auto& [name, st] : sorts) {
        if (st == SortState::unknown) continue;
        SortState& g = global[name];
        if (g == SortState::unknown) g = st;
        // Conflicts surface below as free-set mismatches.
      }
    }
    for (std::size_t t = 0; t < expr.terms.size(); ++t) {
      for (auto& [name, st] : term_sorts[t]) {
        if (st != SortState::unknown) continue;
        const auto it = global.find(name);
        if (it != global.end() && it->second != SortState::unknown) {
          st = it->second;
          changed = true;
        }
      }
      if (propagate_delta_sorts(expr.terms[t], term_sorts[t])) changed = true;
    }
  }

  // Anything still unconstrained adopts the sort already stored in its
  // slots (internally-built expressions carry authoritative sorts; for
  // freshly parsed text the provisional slot sort is adjoint, which is
  // the documented default for bare deltas).
  for (std::size_t t = 0; t < expr.terms.size(); ++t) {
    for (const Factor& f : expr.terms[t].factors) {
      for (const Index* slot : factor_slots(const_cast<Factor&>(f))) {
        if (is_constant_index(slot->name)) continue;
        SortState& st = term_sorts[t][slot->name];
        if (st == SortState::unknown) st = to_state(slot->sort);
      }
    }
    propagate_delta_sorts(expr.terms[t], term_sorts[t]);
    apply_sorts(expr.terms[t], term_sorts[t]);
  }

  // Occurrence counts and free-index consistency.
  std::optional<std::map<std::string, IndexSort>> free_set;
  for (const Term& term : expr.terms) {
    std::map<std::string, IndexSort> free_here;
    for (const auto& [name, count] : name_counts(term)) {
      if (is_constant_index(name)) continue;
      if (count > 2) {
        throw ParseError("index '" + name + "' appears " + std::to_string(count) +
                             " times in one term",
                         0);
      }
      if (count == 1) {
        const auto it = term_sorts[&term - expr.terms.data()].find(name);
        free_here[name] = (it != term_sorts[&term - expr.terms.data()].end() &&
                           it->second == SortState::fundamental)
                              ? IndexSort::fundamental
                              : IndexSort::adjoint;
      }
    }
    if (!free_set) {
      free_set = std::move(free_here);
    } else if (*free_set != free_here) {
      throw ParseError("inconsistent free indices across terms", 0);
    }
  }
}

// Serial renaming of bound labels in first-occurrence order, skipping
// names already used by free indices.
void rename_bound_serial(Term& term, const std::set<std::string>& avoid) {
  const auto counts = name_counts(term);
  std::map<std::string, std::string> mapping;
  int serial = 0;
  auto next_name = [&]() {
    std::string candidate;
    do {
      ++serial;
      candidate = "_" + std::to_string(serial);
    } while (avoid.count(candidate) > 0);
    return candidate;
  };
  for (Factor& f : term.factors) {
    for (Index* slot : factor_slots(f)) {
      if (is_constant_index(slot->name)) continue;
      const auto cit = counts.find(slot->name);
      if (cit != counts.end() && cit->second == 2 && mapping.find(slot->name) == mapping.end()) {
        mapping[slot->name] = next_name();
      }
    }
  }
  for (Factor& f : term.factors) {
    for (Index* slot : factor_slots(f)) {
      const auto mit = mapping.find(slot->name);
      if (mit != mapping.end()) slot->name = mit->second;
    }
  }
}

std::set<std::string> free_names(const ColorExpr& expr) {
  std::set<std::string> out;
  for (const Term& term : expr.terms) {
    for (const auto& [name, count] : name_counts(term)) {
      if (count == 1) out.insert(name);
    }
  }
  return out;
}

}  // namespace

void validate(const ColorExpr& expr) {
  ColorExpr copy = expr;
  resolve_and_validate(copy);
}

TermIndexInfo analyze_term(const Term& term) {
  TermIndexInfo info;
  for (const Factor& f : term.factors) {
    for (const Index* slot : factor_slots(f)) {
      ++info.counts[slot->name];
      info.sorts[slot->name] = slot->sort;
    }
  }
  return info;
}

std::map<std::string, IndexSort> free_indices(const ColorExpr& expr) {
  ColorExpr copy = expr;
  resolve_and_validate(copy);
  std::map<std::string, IndexSort> out;
  if (copy.terms.empty()) return out;
  const TermIndexInfo info = analyze_term(copy.terms.front());
  for (const auto& [name, count] : info.counts) {
    if (count == 1 && !is_constant_index(name)) out[name] = info.sorts.at(name);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

namespace {

struct Token {
  enum Kind {
    Ident,
    Number,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semicolon,
    End
  } kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    // UTF-8 minus sign U+2212.
    if (static_cast<unsigned char>(c) == 0xE2 && i + 2 < n &&
        static_cast<unsigned char>(text[i + 1]) == 0x88 &&
        static_cast<unsigned char>(text[i + 2]) == 0x92) {
      out.push_back({Token::Minus, "-", i});
      i += 3;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i + 1;
      while (j < n && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      out.push_back({Token::Ident, std::string(text.substr(i, j - i)), i});
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i + 1;
      while (j < n && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      out.push_back({Token::Number, std::string(text.substr(i, j - i)), i});
      i = j;
      continue;
    }
    Token::Kind kind;
    switch (c) {
      case '+': kind = Token::Plus; break;
      case '-': kind = Token::Minus; break;
      case '*': kind = Token::Star; break;
      case '/': kind = Token::Slash; break;
      case '^': kind = Token::Caret; break;
      case '(': kind = Token::LParen; break;
      case ')': kind = Token::RParen; break;
      case '[': kind = Token::LBracket; break;
      case ']': kind = Token::RBracket; break;
      case ',': kind = Token::Comma; break;
      case ';': kind = Token::Semicolon; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", i);
    }
    out.push_back({kind, std::string(1, c), i});
    ++i;
  }
  out.push_back({Token::End, "", n});
  return out;
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(lex(text)) {}

  ColorExpr parse_expression() {
    ColorExpr expr;
    bool negate = false;
    if (peek().kind == Token::Minus) {
      advance();
      negate = true;
    }
    expr.terms.push_back(parse_term(negate));
    while (peek().kind == Token::Plus || peek().kind == Token::Minus) {
      const bool minus = peek().kind == Token::Minus;
      advance();
      expr.terms.push_back(parse_term(minus));
    }
    expect(Token::End, "end of input");
    return expr;
  }

 private:
  std::vector<Token> tokens_;
  std::size_t cursor_ = 0;

  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(cursor_ + ahead, tokens_.size() - 1)];
  }
  const Token& advance() { return tokens_[cursor_++]; }
  const Token& expect(Token::Kind kind, const std::string& what) {
    if (peek().kind != kind) {
      throw ParseError("expected " + what + ", found '" + peek().text + "'", peek().pos);
    }
    return advance();
  }

  struct Atom {
    std::optional<NPoly> coeff;
    std::optional<Factor> factor;
  };

  Term parse_term(bool negate) {
    Term term;
    term.coeff = NPoly::integer(negate ? -1 : 1);
    Atom atom = parse_atom();
    absorb(term, std::move(atom));
    while (peek().kind == Token::Star || peek().kind == Token::Slash) {
      const bool divide = peek().kind == Token::Slash;
      const std::size_t op_pos = peek().pos;
      advance();
      Atom next = parse_atom();
      if (divide) {
        if (!next.coeff) {
          throw ParseError("cannot divide by a tensor factor", op_pos);
        }
        try {
          term.coeff = term.coeff.divide(*next.coeff);
        } catch (const std::domain_error& e) {
          throw ParseError(e.what(), op_pos);
        }
      } else {
        absorb(term, std::move(next));
      }
    }
    return term;
  }

  void absorb(Term& term, Atom atom) {
    if (atom.coeff) term.coeff *= *atom.coeff;
    if (atom.factor) term.factors.push_back(std::move(*atom.factor));
  }

  // Applies a trailing '^exponent' to a term-level coefficient atom.
  Atom coeff_atom(NPoly value) {
    if (peek().kind == Token::Caret) {
      const std::size_t op_pos = peek().pos;
      advance();
      int sign = 1;
      if (peek().kind == Token::Minus) {
        advance();
        sign = -1;
      }
      const Token& num = expect(Token::Number, "an integer exponent");
      try {
        value = value.pow(sign * std::stoi(num.text));
      } catch (const std::domain_error& e) {
        throw ParseError(e.what(), op_pos);
      }
    }
    return {value, std::nullopt};
  }

  Atom parse_atom() {
    const Token& tok = peek();
    if (tok.kind == Token::Number) {
      advance();
      return coeff_atom(NPoly::integer(std::stoll(tok.text)));
    }
    if (tok.kind == Token::LParen) {
      advance();
      NPoly value = parse_coeff_expr();
      expect(Token::RParen, "')'");
      return coeff_atom(value);
    }
    if (tok.kind != Token::Ident) {
      throw ParseError("expected a coefficient or factor, found '" + tok.text + "'", tok.pos);
    }
    const std::string& name = tok.text;
    if (name == "i" && peek(1).kind != Token::LParen) {
      advance();
      return coeff_atom(NPoly::i_unit());
    }
    if (name == "NN" && peek(1).kind != Token::LParen) {
      advance();
      return coeff_atom(NPoly::variable());
    }
    if (name == "delta") return {std::nullopt, parse_delta()};
    if (name == "f") return {std::nullopt, parse_rank3<F3>()};
    if (name == "d") return {std::nullopt, parse_rank3<D3>()};
    if (name == "T") return {std::nullopt, parse_elem<TElem>(IndexSort::fundamental)};
    if (name == "F") return {std::nullopt, parse_elem<FElem>(IndexSort::adjoint)};
    if (name == "D") return {std::nullopt, parse_elem<DElem>(IndexSort::adjoint)};
    if (name == "Tr") return {std::nullopt, parse_trdef()};
    if (name == "TrAdj") return {std::nullopt, parse_tradj()};
    throw ParseError("unknown factor or coefficient '" + name + "'", tok.pos);
  }

  Index parse_index(IndexSort sort) {
    if (peek().kind == Token::Number) {
      // Concrete index value; normalize so "01" and "1" coincide.
      const Token& tok = advance();
      return {sort, std::to_string(std::stoll(tok.text))};
    }
    const Token& tok = expect(Token::Ident, "an index name");
    return {sort, tok.text};
  }

  Factor parse_delta() {
    advance();  // delta
    expect(Token::LParen, "'('");
    Index a = parse_index(IndexSort::adjoint);  // provisional; resolved later
    expect(Token::Comma, "','");
    Index b = parse_index(IndexSort::adjoint);
    expect(Token::RParen, "')'");
    return Delta{std::move(a), std::move(b)};
  }

  template <typename Node>
  Factor parse_rank3() {
    advance();  // f or d
    expect(Token::LParen, "'('");
    Index a = parse_index(IndexSort::adjoint);
    expect(Token::Comma, "','");
    Index b = parse_index(IndexSort::adjoint);
    expect(Token::Comma, "','");
    Index c = parse_index(IndexSort::adjoint);
    expect(Token::RParen, "')'");
    return Node{{std::move(a), std::move(b), std::move(c)}};
  }

  template <typename Node>
  Factor parse_elem(IndexSort element_sort) {
    advance();  // T, F or D
    expect(Token::LParen, "'('");
    Index a = parse_index(IndexSort::adjoint);
    expect(Token::Semicolon, "';'");
    Index row = parse_index(element_sort);
    expect(Token::Comma, "','");
    Index col = parse_index(element_sort);
    expect(Token::RParen, "')'");
    return Node{std::move(a), std::move(row), std::move(col)};
  }

  Factor parse_trdef() {
    advance();  // Tr
    expect(Token::LBracket, "'['");
    TrDef node;
    while (peek().kind != Token::RBracket) {
      const Token& gen = expect(Token::Ident, "'T(...)' inside Tr[...]");
      if (gen.text != "T") {
        throw ParseError("only T(...) may appear inside Tr[...], found '" + gen.text + "'",
                         gen.pos);
      }
      expect(Token::LParen, "'('");
      node.word.push_back(parse_index(IndexSort::adjoint));
      expect(Token::RParen, "')'");
    }
    if (node.word.empty()) throw ParseError("empty Tr[...]", peek().pos);
    expect(Token::RBracket, "']'");
    return node;
  }

  Factor parse_tradj() {
    advance();  // TrAdj
    expect(Token::LBracket, "'['");
    TrAdj node;
    while (peek().kind != Token::RBracket) {
      const Token& gen = expect(Token::Ident, "'F(...)' or 'D(...)' inside TrAdj[...]");
      if (gen.text != "F" && gen.text != "D") {
        throw ParseError("only F(...) or D(...) may appear inside TrAdj[...], found '" +
                             gen.text + "'",
                         gen.pos);
      }
      expect(Token::LParen, "'('");
      node.word.emplace_back(gen.text == "F" ? AdjKind::F : AdjKind::D,
                             parse_index(IndexSort::adjoint));
      expect(Token::RParen, "')'");
    }
    if (node.word.empty()) throw ParseError("empty TrAdj[...]", peek().pos);
    expect(Token::RBracket, "']'");
    return node;
  }

  // Coefficient arithmetic inside parentheses: +,-,*,/,^ over rationals,
  // i and NN, unary minus allowed.
  NPoly parse_coeff_expr() {
    NPoly value = parse_coeff_product();
    while (peek().kind == Token::Plus || peek().kind == Token::Minus) {
      const bool minus = peek().kind == Token::Minus;
      advance();
      NPoly rhs = parse_coeff_product();
      value = minus ? value - rhs : value + rhs;
    }
    return value;
  }

  NPoly parse_coeff_product() {
    NPoly value = parse_coeff_signed();
    while (peek().kind == Token::Star || peek().kind == Token::Slash) {
      const bool divide = peek().kind == Token::Slash;
      const std::size_t op_pos = peek().pos;
      advance();
      NPoly rhs = parse_coeff_signed();
      if (divide) {
        try {
          value = value.divide(rhs);
        } catch (const std::domain_error& e) {
          throw ParseError(e.what(), op_pos);
        }
      } else {
        value *= rhs;
      }
    }
    return value;
  }

  NPoly parse_coeff_signed() {
    if (peek().kind == Token::Minus) {
      advance();
      return -parse_coeff_signed();
    }
    return parse_coeff_power();
  }

  NPoly parse_coeff_power() {
    NPoly base = parse_coeff_atom();
    if (peek().kind == Token::Caret) {
      const std::size_t op_pos = peek().pos;
      advance();
      int sign = 1;
      if (peek().kind == Token::Minus) {
        advance();
        sign = -1;
      }
      const Token& num = expect(Token::Number, "an integer exponent");
      try {
        base = base.pow(sign * std::stoi(num.text));
      } catch (const std::domain_error& e) {
        throw ParseError(e.what(), op_pos);
      }
    }
    return base;
  }

  NPoly parse_coeff_atom() {
    const Token& tok = peek();
    if (tok.kind == Token::Number) {
      advance();
      return NPoly::integer(std::stoll(tok.text));
    }
    if (tok.kind == Token::Ident && tok.text == "i") {
      advance();
      return NPoly::i_unit();
    }
    if (tok.kind == Token::Ident && tok.text == "NN") {
      advance();
      return NPoly::variable();
    }
    if (tok.kind == Token::LParen) {
      advance();
      NPoly inner = parse_coeff_expr();
      expect(Token::RParen, "')'");
      return inner;
    }
    throw ParseError("expected a coefficient, found '" + tok.text + "'", tok.pos);
  }
};

}  // namespace

ColorExpr parse(std::string_view text) {
  Parser parser(text);
  ColorExpr expr = parser.parse_expression();
  resolve_and_validate(expr);
  const std::set<std::string> avoid = free_names(expr);
  for (Term& term : expr.terms) rename_bound_serial(term, avoid);
  return expr;
}

// ---------------------------------------------------------------------------
// Canonicalization
// ---------------------------------------------------------------------------

namespace {

// Inversion-counting sort of three indices; never swaps equal elements,
// so repeated labels keep sign +1.
int sort3_signed(std::array<Index, 3>& idx) {
  int sign = 1;
  auto swap_if = [&](int i, int j) {
    if (idx[j] < idx[i]) {
      std::swap(idx[i], idx[j]);
      sign = -sign;
    }
  };
  swap_if(0, 1);
  swap_if(1, 2);
  swap_if(0, 1);
  return sign;
}

template <typename Word>
void rotate_to_minimal(Word& word) {
  if (word.size() < 2) return;
  Word best = word;
  Word current = word;
  for (std::size_t k = 1; k < word.size(); ++k) {
    std::rotate(current.begin(), current.begin() + 1, current.end());
    if (current < best) best = current;
  }
  word = best;
}

// Local canonical form of each factor; returns the accumulated sign.
int canonicalize_factors_locally(Term& term) {
  int sign = 1;
  for (Factor& f : term.factors) {
    std::visit(
        [&sign](auto& node) {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, Delta>) {
            if (node.b < node.a) std::swap(node.a, node.b);
          } else if constexpr (std::is_same_v<T, F3>) {
            sign *= sort3_signed(node.idx);
          } else if constexpr (std::is_same_v<T, D3>) {
            std::array<Index, 3> copy = node.idx;
            sort3_signed(copy);
            node.idx = copy;
          } else if constexpr (std::is_same_v<T, TrDef> || std::is_same_v<T, TrAdj>) {
            rotate_to_minimal(node.word);
          }
        },
        f);
  }
  return sign;
}

std::pair<std::size_t, std::string> factor_sort_key(const Factor& f) {
  return {f.index(), print(f)};
}

void one_canonical_pass(Term& term, const std::set<std::string>& avoid) {
  const int sign = canonicalize_factors_locally(term);
  if (sign < 0) term.coeff = -term.coeff;
  std::sort(term.factors.begin(), term.factors.end(), [](const Factor& x, const Factor& y) {
    return factor_sort_key(x) < factor_sort_key(y);
  });
  rename_bound_serial(term, avoid);
}

Term canonicalize_term(Term term, const std::set<std::string>& avoid) {
  // The pass interleaves slot sorting, factor sorting and bound-label
  // renaming, which feed back into one another; iterate to a fixpoint
  // (or, on a rename-induced cycle, the lexicographically least state
  // of the cycle, which makes the result idempotent).
  std::vector<std::pair<std::string, Term>> sequence;
  std::string state = print(term);
  for (int guard = 0; guard < 32; ++guard) {
    sequence.emplace_back(state, term);
    one_canonical_pass(term, avoid);
    std::string next = print(term);
    for (std::size_t pos = 0; pos < sequence.size(); ++pos) {
      if (sequence[pos].first != next) continue;
      std::size_t best = pos;
      for (std::size_t k = pos + 1; k < sequence.size(); ++k) {
        if (sequence[k].first < sequence[best].first) best = k;
      }
      return sequence[best].second;
    }
    state = std::move(next);
  }
  return term;
}

}  // namespace

ColorExpr canonicalize(const ColorExpr& expr) {
  const std::set<std::string> avoid = free_names(expr);
  std::map<std::string, std::pair<std::vector<Factor>, NPoly>> merged;
  for (const Term& original : expr.terms) {
    if (original.coeff.is_zero()) continue;
    Term term = canonicalize_term(original, avoid);
    std::string key;
    for (const Factor& f : term.factors) key += print(f) + "|";
    auto [it, fresh] = merged.try_emplace(key, std::make_pair(term.factors, term.coeff));
    if (!fresh) {
      it->second.second += term.coeff;
    }
  }
  ColorExpr out;
  for (auto& [key, pair] : merged) {
    if (pair.second.is_zero()) continue;
    out.terms.push_back(Term{std::move(pair.second), std::move(pair.first)});
  }
  return out;
}

}  // namespace suncolor

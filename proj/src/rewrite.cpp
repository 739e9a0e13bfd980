#include "suncolor/rewrite.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <optional>
#include <set>

namespace suncolor {

namespace {

// ---------------------------------------------------------------------------
// Shared helpers
// ---------------------------------------------------------------------------

NPoly half() { return NPoly::constant(GRational(Rational(1, 2))); }
NPoly i_half() { return NPoly::constant(GRational(Rational(0), Rational(1, 2))); }
NPoly over_n(const Rational& r) {
  return NPoly::monomial(GRational(r), -1);  // r / N
}

std::set<std::string> term_labels(const Term& term) {
  std::set<std::string> out;
  for (const Factor& f : term.factors) {
    for (const Index* slot : factor_slots(const_cast<Factor&>(f))) out.insert(slot->name);
  }
  return out;
}

// Deterministic fresh bound labels, disjoint from everything in the term.
class FreshNames {
 public:
  explicit FreshNames(const Term& term) : used_(term_labels(term)) {}

  Index adj_label() { return adj(next()); }
  Index fund_label() { return fund(next()); }

 private:
  std::set<std::string> used_;
  int counter_ = 0;

  std::string next() {
    std::string name;
    do {
      name = "~" + std::to_string(++counter_);
    } while (used_.count(name) > 0);
    used_.insert(name);
    return name;
  }
};

Term with_factors_removed(const Term& term, std::initializer_list<std::size_t> remove) {
  Term out;
  out.coeff = term.coeff;
  for (std::size_t k = 0; k < term.factors.size(); ++k) {
    if (std::find(remove.begin(), remove.end(), k) == remove.end()) {
      out.factors.push_back(term.factors[k]);
    }
  }
  return out;
}

// Reorders a rank-3 slot array into `target` order, returning the
// permutation sign (labels must be distinct).
int reorder_sign(const std::array<Index, 3>& current, const std::array<Index, 3>& target) {
  std::array<int, 3> perm{};
  for (int t = 0; t < 3; ++t) {
    for (int c = 0; c < 3; ++c) {
      if (current[static_cast<std::size_t>(c)].name == target[static_cast<std::size_t>(t)].name) {
        perm[static_cast<std::size_t>(t)] = c;
      }
    }
  }
  int inversions = 0;
  for (int x = 0; x < 3; ++x)
    for (int y = x + 1; y < 3; ++y)
      if (perm[static_cast<std::size_t>(x)] > perm[static_cast<std::size_t>(y)]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

struct RuleResult {
  std::string rule_id;
  std::size_t factor_index;
  std::vector<Term> replacements;
};

// ---------------------------------------------------------------------------
// Termination measures (checked per application in debug builds)
// ---------------------------------------------------------------------------

// T-slots are TrDef word positions and the adjoint slot of a TElem.
[[maybe_unused]] std::vector<long long> reduce_measure(const Term& term) {
  std::map<std::string, int> tslot_count, total_count;
  std::map<std::string, IndexSort> sorts;
  long long word_total = 0, factor_count = 0;
  for (const Factor& f : term.factors) {
    ++factor_count;
    if (const auto* tr = std::get_if<TrDef>(&f)) {
      word_total += static_cast<long long>(tr->word.size());
      for (const Index& idx : tr->word) ++tslot_count[idx.name];
    } else if (const auto* te = std::get_if<TElem>(&f)) {
      word_total += 1;
      ++tslot_count[te->a.name];
    }
    for (const Index* slot : factor_slots(const_cast<Factor&>(f))) {
      ++total_count[slot->name];
      sorts[slot->name] = slot->sort;
    }
  }
  long long m1 = 0, bound_fund = 0;
  for (const auto& [name, count] : total_count) {
    if (count != 2) continue;
    if (tslot_count[name] == 2) ++m1;
    if (sorts[name] == IndexSort::fundamental) ++bound_fund;
  }
  return {m1, bound_fund, word_total, factor_count};
}

[[maybe_unused]] std::vector<long long> contract_measure(const Term& term, bool pack) {
  long long f_count = 0, d_count = 0, factor_count = 0, bound = 0;
  std::map<std::string, int> counts;
  for (const Factor& f : term.factors) {
    ++factor_count;
    if (std::holds_alternative<F3>(f)) ++f_count;
    if (std::holds_alternative<D3>(f)) ++d_count;
    for (const Index* slot : factor_slots(const_cast<Factor&>(f))) ++counts[slot->name];
  }
  for (const auto& [name, count] : counts) {
    if (count == 2) ++bound;
  }
  if (pack) return {d_count, f_count, factor_count + bound};
  return {f_count, factor_count + bound};
}

// ---------------------------------------------------------------------------
// reduce_defining rules
// ---------------------------------------------------------------------------

std::optional<RuleResult> rule_trace_closures(const Term& term) {
  for (std::size_t k = 0; k < term.factors.size(); ++k) {
    const auto* tr = std::get_if<TrDef>(&term.factors[k]);
    if (!tr) continue;
    if (tr->word.empty()) {
      Term out = with_factors_removed(term, {k});
      out.coeff *= NPoly::variable();
      return RuleResult{"tr-empty", k, {std::move(out)}};
    }
    if (tr->word.size() == 1) {
      return RuleResult{"tr-single", k, {}};  // Tr T^a = 0
    }
    if (tr->word.size() == 2) {
      Term out = with_factors_removed(term, {k});
      out.coeff *= half();
      out.factors.push_back(Delta{tr->word[0], tr->word[1]});
      return RuleResult{"tr-pair", k, {std::move(out)}};
    }
  }
  return std::nullopt;
}

std::optional<RuleResult> rule_fierz_intra(const Term& term) {
  for (std::size_t k = 0; k < term.factors.size(); ++k) {
    const auto* tr = std::get_if<TrDef>(&term.factors[k]);
    if (!tr) continue;
    for (std::size_t p = 0; p < tr->word.size(); ++p) {
      for (std::size_t q = p + 1; q < tr->word.size(); ++q) {
        if (tr->word[p].name != tr->word[q].name) continue;
        if (is_constant_index(tr->word[p].name)) continue;
        std::vector<Index> x(tr->word.begin() + static_cast<long>(p) + 1,
                             tr->word.begin() + static_cast<long>(q));
        std::vector<Index> y(tr->word.begin() + static_cast<long>(q) + 1, tr->word.end());
        y.insert(y.end(), tr->word.begin(), tr->word.begin() + static_cast<long>(p));
        // Tr(T^a X T^a Y) = [Tr X Tr Y - Tr(XY)/N] / 2
        Term t1 = with_factors_removed(term, {k});
        t1.coeff *= half();
        t1.factors.push_back(TrDef{x});
        t1.factors.push_back(TrDef{y});
        Term t2 = with_factors_removed(term, {k});
        t2.coeff *= -over_n(Rational(1, 2));
        std::vector<Index> xy = x;
        xy.insert(xy.end(), y.begin(), y.end());
        t2.factors.push_back(TrDef{std::move(xy)});
        return RuleResult{"fierz-intra", k, {std::move(t1), std::move(t2)}};
      }
    }
  }
  return std::nullopt;
}

std::optional<RuleResult> rule_fierz_cross(const Term& term) {
  for (std::size_t k1 = 0; k1 < term.factors.size(); ++k1) {
    const auto* a = std::get_if<TrDef>(&term.factors[k1]);
    if (!a) continue;
    for (std::size_t k2 = k1 + 1; k2 < term.factors.size(); ++k2) {
      const auto* b = std::get_if<TrDef>(&term.factors[k2]);
      if (!b) continue;
      for (std::size_t p = 0; p < a->word.size(); ++p) {
        for (std::size_t q = 0; q < b->word.size(); ++q) {
          if (a->word[p].name != b->word[q].name) continue;
          if (is_constant_index(a->word[p].name)) continue;
          // Rotate both words so the shared label comes first, then drop it.
          std::vector<Index> x(a->word.begin() + static_cast<long>(p) + 1, a->word.end());
          x.insert(x.end(), a->word.begin(), a->word.begin() + static_cast<long>(p));
          std::vector<Index> y(b->word.begin() + static_cast<long>(q) + 1, b->word.end());
          y.insert(y.end(), b->word.begin(), b->word.begin() + static_cast<long>(q));
          // Tr(T^a X) Tr(T^a Y) = [Tr(XY) - Tr X Tr Y / N] / 2
          Term t1 = with_factors_removed(term, {k1, k2});
          t1.coeff *= half();
          std::vector<Index> xy = x;
          xy.insert(xy.end(), y.begin(), y.end());
          t1.factors.push_back(TrDef{std::move(xy)});
          Term t2 = with_factors_removed(term, {k1, k2});
          t2.coeff *= -over_n(Rational(1, 2));
          t2.factors.push_back(TrDef{x});
          t2.factors.push_back(TrDef{y});
          return RuleResult{"fierz-cross", k1, {std::move(t1), std::move(t2)}};
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<RuleResult> rule_fierz_telem_telem(const Term& term) {
  for (std::size_t k1 = 0; k1 < term.factors.size(); ++k1) {
    const auto* a = std::get_if<TElem>(&term.factors[k1]);
    if (!a) continue;
    for (std::size_t k2 = k1 + 1; k2 < term.factors.size(); ++k2) {
      const auto* b = std::get_if<TElem>(&term.factors[k2]);
      if (!b || a->a.name != b->a.name || is_constant_index(a->a.name)) continue;
      // T^a_ij T^a_kl = (delta_il delta_jk - delta_ij delta_kl / N) / 2
      Term t1 = with_factors_removed(term, {k1, k2});
      t1.coeff *= half();
      t1.factors.push_back(Delta{a->row, b->col});
      t1.factors.push_back(Delta{a->col, b->row});
      Term t2 = with_factors_removed(term, {k1, k2});
      t2.coeff *= -over_n(Rational(1, 2));
      t2.factors.push_back(Delta{a->row, a->col});
      t2.factors.push_back(Delta{b->row, b->col});
      return RuleResult{"fierz-elem-elem", k1, {std::move(t1), std::move(t2)}};
    }
  }
  return std::nullopt;
}

std::optional<RuleResult> rule_fierz_telem_trace(const Term& term) {
  for (std::size_t ke = 0; ke < term.factors.size(); ++ke) {
    const auto* el = std::get_if<TElem>(&term.factors[ke]);
    if (!el) continue;
    for (std::size_t kt = 0; kt < term.factors.size(); ++kt) {
      const auto* tr = std::get_if<TrDef>(&term.factors[kt]);
      if (!tr) continue;
      for (std::size_t p = 0; p < tr->word.size(); ++p) {
        if (tr->word[p].name != el->a.name || is_constant_index(el->a.name)) continue;
        std::vector<Index> rest(tr->word.begin() + static_cast<long>(p) + 1, tr->word.end());
        rest.insert(rest.end(), tr->word.begin(), tr->word.begin() + static_cast<long>(p));
        // T^a_ij Tr(T^a W) = [ (W)_ij - delta_ij Tr W / N ] / 2
        Term t1 = with_factors_removed(term, {ke, kt});
        t1.coeff *= half();
        if (rest.empty()) {
          t1.factors.push_back(Delta{el->row, el->col});
        } else {
          FreshNames fresh(term);
          Index from = el->row;
          for (std::size_t w = 0; w + 1 < rest.size(); ++w) {
            Index mid = fresh.fund_label();
            t1.factors.push_back(TElem{rest[w], from, mid});
            from = mid;
          }
          t1.factors.push_back(TElem{rest.back(), from, el->col});
        }
        Term t2 = with_factors_removed(term, {ke, kt});
        t2.coeff *= -over_n(Rational(1, 2));
        t2.factors.push_back(Delta{el->row, el->col});
        if (!rest.empty()) t2.factors.push_back(TrDef{std::move(rest)});
        return RuleResult{"fierz-elem-trace", ke, {std::move(t1), std::move(t2)}};
      }
    }
  }
  return std::nullopt;
}

std::optional<RuleResult> rule_telem_loop(const Term& term) {
  for (std::size_t k = 0; k < term.factors.size(); ++k) {
    const auto* el = std::get_if<TElem>(&term.factors[k]);
    if (!el || el->row.name != el->col.name || is_constant_index(el->row.name)) continue;
    Term out = with_factors_removed(term, {k});
    out.factors.push_back(TrDef{{el->a}});
    return RuleResult{"elem-loop", k, {std::move(out)}};
  }
  return std::nullopt;
}

std::optional<RuleResult> rule_telem_chain(const Term& term, const TermIndexInfo& info) {
  for (std::size_t k1 = 0; k1 < term.factors.size(); ++k1) {
    const auto* a = std::get_if<TElem>(&term.factors[k1]);
    if (!a) continue;
    for (std::size_t k2 = 0; k2 < term.factors.size(); ++k2) {
      if (k2 == k1) continue;
      const auto* b = std::get_if<TElem>(&term.factors[k2]);
      if (!b) continue;
      if (a->col.name != b->row.name || !info.is_bound(a->col.name)) continue;
      // (T^a T^b)_ik via the generator product rule.
      FreshNames fresh(term);
      const Index e = fresh.adj_label();
      Term t1 = with_factors_removed(term, {k1, k2});
      t1.coeff *= over_n(Rational(1, 2));
      t1.factors.push_back(Delta{a->a, b->a});
      t1.factors.push_back(Delta{a->row, b->col});
      Term t2 = with_factors_removed(term, {k1, k2});
      t2.coeff *= half();
      t2.factors.push_back(D3{{a->a, b->a, e}});
      t2.factors.push_back(TElem{e, a->row, b->col});
      Term t3 = with_factors_removed(term, {k1, k2});
      t3.coeff *= i_half();
      t3.factors.push_back(F3{{a->a, b->a, e}});
      t3.factors.push_back(TElem{e, a->row, b->col});
      return RuleResult{"elem-chain", std::min(k1, k2),
                        {std::move(t1), std::move(t2), std::move(t3)}};
    }
  }
  return std::nullopt;
}

std::optional<RuleResult> rule_trace_peel(const Term& term) {
  for (std::size_t k = 0; k < term.factors.size(); ++k) {
    const auto* tr = std::get_if<TrDef>(&term.factors[k]);
    if (!tr || tr->word.size() < 3) continue;
    const Index a = tr->word[0];
    const Index b = tr->word[1];
    std::vector<Index> rest(tr->word.begin() + 2, tr->word.end());
    FreshNames fresh(term);
    const Index e = fresh.adj_label();
    // Tr(T^a T^b X) = delta_ab Tr X / (2N) + (d_abe + i f_abe) Tr(T^e X) / 2
    Term t1 = with_factors_removed(term, {k});
    t1.coeff *= over_n(Rational(1, 2));
    t1.factors.push_back(Delta{a, b});
    t1.factors.push_back(TrDef{rest});
    std::vector<Index> eword;
    eword.push_back(e);
    eword.insert(eword.end(), rest.begin(), rest.end());
    Term t2 = with_factors_removed(term, {k});
    t2.coeff *= half();
    t2.factors.push_back(D3{{a, b, e}});
    t2.factors.push_back(TrDef{eword});
    Term t3 = with_factors_removed(term, {k});
    t3.coeff *= i_half();
    t3.factors.push_back(F3{{a, b, e}});
    t3.factors.push_back(TrDef{std::move(eword)});
    return RuleResult{"trace-peel", k, {std::move(t1), std::move(t2), std::move(t3)}};
  }
  return std::nullopt;
}

std::optional<RuleResult> find_reduce_rule(const Term& term) {
  const TermIndexInfo info = analyze_term(term);
  if (auto r = rule_trace_closures(term)) return r;
  if (auto r = rule_fierz_intra(term)) return r;
  if (auto r = rule_fierz_cross(term)) return r;
  if (auto r = rule_fierz_telem_telem(term)) return r;
  if (auto r = rule_fierz_telem_trace(term)) return r;
  if (auto r = rule_telem_loop(term)) return r;
  if (auto r = rule_telem_chain(term, info)) return r;
  if (auto r = rule_trace_peel(term)) return r;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// contract rules
// ---------------------------------------------------------------------------

struct TensorView {
  std::size_t factor_index;
  bool is_f;
  std::array<Index, 3> idx;
};

std::vector<TensorView> tensor_views(const Term& term) {
  std::vector<TensorView> out;
  for (std::size_t k = 0; k < term.factors.size(); ++k) {
    if (const auto* f3 = std::get_if<F3>(&term.factors[k])) {
      out.push_back({k, true, f3->idx});
    } else if (const auto* d3 = std::get_if<D3>(&term.factors[k])) {
      out.push_back({k, false, d3->idx});
    }
  }
  return out;
}

// Bound labels occurring exactly once in each of the two views.
std::vector<std::string> shared_labels(const TensorView& x, const TensorView& y,
                                       const TermIndexInfo& info) {
  std::vector<std::string> out;
  for (const Index& ix : x.idx) {
    if (!info.is_bound(ix.name)) continue;
    int in_x = 0, in_y = 0;
    for (const Index& jx : x.idx) in_x += jx.name == ix.name;
    for (const Index& jy : y.idx) in_y += jy.name == ix.name;
    if (in_x == 1 && in_y == 1 && std::find(out.begin(), out.end(), ix.name) == out.end()) {
      out.push_back(ix.name);
    }
  }
  return out;
}

const Index& slot_named(const TensorView& v, const std::string& name) {
  for (const Index& idx : v.idx) {
    if (idx.name == name) return idx;
  }
  throw std::logic_error("slot_named: missing label");
}

Index remaining_slot(const TensorView& v, const std::string& p, const std::string& q) {
  for (const Index& idx : v.idx) {
    if (idx.name != p && idx.name != q) return idx;
  }
  throw std::logic_error("remaining_slot: not found");
}

std::optional<RuleResult> rule_delta(const Term& term, const TermIndexInfo& info) {
  for (std::size_t k = 0; k < term.factors.size(); ++k) {
    const auto* del = std::get_if<Delta>(&term.factors[k]);
    if (!del) continue;
    if (del->a.name == del->b.name) {
      Term out = with_factors_removed(term, {k});
      if (is_constant_index(del->a.name)) {
        // Equal concrete values: the factor is plain 1.
      } else if (del->a.sort == IndexSort::adjoint) {
        out.coeff *= NPoly::variable() * NPoly::variable() - NPoly::integer(1);
      } else {
        out.coeff *= NPoly::variable();
      }
      return RuleResult{"delta-trace", k, {std::move(out)}};
    }
    if (is_constant_index(del->a.name) && is_constant_index(del->b.name)) {
      return RuleResult{"delta-mismatch", k, {}};  // distinct concrete values
    }
    const bool a_bound = info.is_bound(del->a.name);
    const bool b_bound = info.is_bound(del->b.name);
    if (!a_bound && !b_bound) continue;
    // Substitute the bound label's other occurrence.
    const std::string victim = b_bound ? del->b.name : del->a.name;
    const std::string replacement = b_bound ? del->a.name : del->b.name;
    Term out = with_factors_removed(term, {k});
    for (Factor& f : out.factors) {
      for (Index* slot : factor_slots(f)) {
        if (slot->name == victim) slot->name = replacement;
      }
    }
    return RuleResult{"delta-subst", k, {std::move(out)}};
  }
  return std::nullopt;
}

std::optional<RuleResult> rule_annihilate(const Term& term) {
  for (std::size_t k = 0; k < term.factors.size(); ++k) {
    if (const auto* f3 = std::get_if<F3>(&term.factors[k])) {
      for (int x = 0; x < 3; ++x)
        for (int y = x + 1; y < 3; ++y)
          if (f3->idx[static_cast<std::size_t>(x)].name ==
              f3->idx[static_cast<std::size_t>(y)].name) {
            return RuleResult{"f-repeated", k, {}};
          }
    } else if (const auto* d3 = std::get_if<D3>(&term.factors[k])) {
      // A repeated summed label inside one d factor: sum_e d_eec = 0.
      for (int x = 0; x < 3; ++x)
        for (int y = x + 1; y < 3; ++y)
          if (d3->idx[static_cast<std::size_t>(x)].name ==
                  d3->idx[static_cast<std::size_t>(y)].name &&
              !is_constant_index(d3->idx[static_cast<std::size_t>(x)].name)) {
            return RuleResult{"d-traced", k, {}};
          }
    } else if (const auto* te = std::get_if<TElem>(&term.factors[k])) {
      if (te->row.name == te->col.name && !is_constant_index(te->row.name)) {
        return RuleResult{"t-traced", k, {}};  // Tr T^a = 0
      }
    }
  }
  return std::nullopt;
}

std::optional<RuleResult> rule_double_contraction(const Term& term,
                                                  const TermIndexInfo& info) {
  const auto views = tensor_views(term);
  for (std::size_t x = 0; x < views.size(); ++x) {
    for (std::size_t y = x + 1; y < views.size(); ++y) {
      auto shared = shared_labels(views[x], views[y], info);
      if (shared.size() < 2) continue;
      std::sort(shared.begin(), shared.end());
      const std::string& p = shared[0];
      const std::string& q = shared[1];
      const Index pi = slot_named(views[x], p);
      const Index qi = slot_named(views[x], q);
      const Index ext_x = remaining_slot(views[x], p, q);
      const Index ext_y = remaining_slot(views[y], p, q);
      if (views[x].is_f != views[y].is_f) {
        // f and d contracted over two labels vanish by symmetry.
        return RuleResult{"fd-double", views[x].factor_index, {}};
      }
      int sign = 1;
      if (views[x].is_f) {
        sign *= reorder_sign(views[x].idx, {pi, qi, ext_x});
        sign *= reorder_sign(views[y].idx, {pi, qi, ext_y});
      }
      Term out = with_factors_removed(term, {views[x].factor_index, views[y].factor_index});
      if (views[x].is_f) {
        out.coeff *= NPoly::monomial(GRational(Rational(sign)), 1);  // sign * N
      } else {
        // (N^2 - 4) / N
        out.coeff *= NPoly::monomial(GRational(Rational(1)), 1) -
                     NPoly::monomial(GRational(Rational(4)), -1);
      }
      out.factors.push_back(Delta{ext_x, ext_y});
      return RuleResult{views[x].is_f ? "ff-double" : "dd-double", views[x].factor_index,
                        {std::move(out)}};
    }
  }
  return std::nullopt;
}

std::optional<RuleResult> rule_triangle(const Term& term, const TermIndexInfo& info) {
  const auto views = tensor_views(term);
  for (std::size_t a = 0; a < views.size(); ++a) {
    for (std::size_t b = a + 1; b < views.size(); ++b) {
      const auto s_ab = shared_labels(views[a], views[b], info);
      if (s_ab.size() != 1) continue;
      for (std::size_t c = b + 1; c < views.size(); ++c) {
        const auto s_bc = shared_labels(views[b], views[c], info);
        const auto s_ca = shared_labels(views[c], views[a], info);
        if (s_bc.size() != 1 || s_ca.size() != 1) continue;
        if (s_ab[0] == s_bc[0] || s_bc[0] == s_ca[0] || s_ab[0] == s_ca[0]) continue;
        // Closed three-tensor cycle over s_ab, s_bc, s_ca.
        const Index ext_a = remaining_slot(views[a], s_ab[0], s_ca[0]);
        const Index ext_b = remaining_slot(views[b], s_ab[0], s_bc[0]);
        const Index ext_c = remaining_slot(views[c], s_bc[0], s_ca[0]);
        int sign = 1;
        if (views[a].is_f) {
          sign *= reorder_sign(views[a].idx,
                               {ext_a, slot_named(views[a], s_ca[0]), slot_named(views[a], s_ab[0])});
        }
        if (views[b].is_f) {
          sign *= reorder_sign(views[b].idx,
                               {ext_b, slot_named(views[b], s_ab[0]), slot_named(views[b], s_bc[0])});
        }
        if (views[c].is_f) {
          sign *= reorder_sign(views[c].idx,
                               {ext_c, slot_named(views[c], s_bc[0]), slot_named(views[c], s_ca[0])});
        }
        const int nf = (views[a].is_f ? 1 : 0) + (views[b].is_f ? 1 : 0) + (views[c].is_f ? 1 : 0);
        Term out = with_factors_removed(
            term, {views[a].factor_index, views[b].factor_index, views[c].factor_index});
        NPoly scale;
        bool out_is_f = false;
        switch (nf) {
          case 3:  // sum f f f = N/2 * f
            scale = NPoly::monomial(GRational(Rational(1, 2)), 1);
            out_is_f = true;
            break;
          case 2:  // one d in the cycle: -N/2 * d
            scale = NPoly::monomial(GRational(Rational(-1, 2)), 1);
            break;
          case 1:  // two d's: -(N^2-4)/(2N) * f
            scale = NPoly::monomial(GRational(Rational(-1, 2)), 1) +
                    NPoly::monomial(GRational(Rational(2)), -1);
            out_is_f = true;
            break;
          default:  // all d: (N^2-12)/(2N) * d
            scale = NPoly::monomial(GRational(Rational(1, 2)), 1) -
                    NPoly::monomial(GRational(Rational(6)), -1);
            break;
        }
        out.coeff *= scale * NPoly::integer(sign);
        if (out_is_f) {
          out.factors.push_back(F3{{ext_a, ext_b, ext_c}});
        } else {
          out.factors.push_back(D3{{ext_a, ext_b, ext_c}});
        }
        return RuleResult{"triangle", views[a].factor_index, {std::move(out)}};
      }
    }
  }
  return std::nullopt;
}

std::optional<RuleResult> rule_ff_expand(const Term& term, const TermIndexInfo& info) {
  const auto views = tensor_views(term);
  for (std::size_t x = 0; x < views.size(); ++x) {
    if (!views[x].is_f) continue;
    for (std::size_t y = x + 1; y < views.size(); ++y) {
      if (!views[y].is_f) continue;
      const auto shared = shared_labels(views[x], views[y], info);
      if (shared.size() != 1 || !info.is_bound(shared[0])) continue;
      const std::string& s = shared[0];
      std::array<Index, 2> ox{}, oy{};
      int n_ox = 0, n_oy = 0;
      for (const Index& idx : views[x].idx) {
        if (idx.name != s) ox[static_cast<std::size_t>(n_ox++)] = idx;
      }
      for (const Index& idx : views[y].idx) {
        if (idx.name != s) oy[static_cast<std::size_t>(n_oy++)] = idx;
      }
      const int sign = reorder_sign(views[x].idx, {ox[0], ox[1], slot_named(views[x], s)}) *
                       reorder_sign(views[y].idx, {oy[0], oy[1], slot_named(views[y], s)});
      // f_abs f_cds = 2/N (delta_ac delta_bd - delta_ad delta_bc)
      //             + d_act d_bdt - d_bct d_adt
      FreshNames fresh(term);
      const Index t = fresh.adj_label();
      const Index& a = ox[0];
      const Index& b = ox[1];
      const Index& c = oy[0];
      const Index& d = oy[1];
      const NPoly pref = NPoly::integer(sign);
      Term t1 = with_factors_removed(term, {views[x].factor_index, views[y].factor_index});
      t1.coeff *= pref * over_n(Rational(2));
      t1.factors.push_back(Delta{a, c});
      t1.factors.push_back(Delta{b, d});
      Term t2 = with_factors_removed(term, {views[x].factor_index, views[y].factor_index});
      t2.coeff *= pref * (-over_n(Rational(2)));
      t2.factors.push_back(Delta{a, d});
      t2.factors.push_back(Delta{b, c});
      Term t3 = with_factors_removed(term, {views[x].factor_index, views[y].factor_index});
      t3.coeff *= pref;
      t3.factors.push_back(D3{{a, c, t}});
      t3.factors.push_back(D3{{b, d, t}});
      Term t4 = with_factors_removed(term, {views[x].factor_index, views[y].factor_index});
      t4.coeff *= -pref;
      t4.factors.push_back(D3{{b, c, t}});
      t4.factors.push_back(D3{{a, d, t}});
      return RuleResult{"ff-expand", views[x].factor_index,
                        {std::move(t1), std::move(t2), std::move(t3), std::move(t4)}};
    }
  }
  return std::nullopt;
}

// N=3 pack: 3 d_abs d_cds = delta_ac delta_bd + delta_ad delta_bc
//           - delta_ab delta_cd + f_act f_bdt + f_adt f_bct
std::optional<RuleResult> rule_dd_expand_n3(const Term& term, const TermIndexInfo& info) {
  const auto views = tensor_views(term);
  for (std::size_t x = 0; x < views.size(); ++x) {
    if (views[x].is_f) continue;
    for (std::size_t y = x + 1; y < views.size(); ++y) {
      if (views[y].is_f) continue;
      const auto shared = shared_labels(views[x], views[y], info);
      if (shared.size() != 1 || !info.is_bound(shared[0])) continue;
      const std::string& s = shared[0];
      std::array<Index, 2> ox{}, oy{};
      int n_ox = 0, n_oy = 0;
      for (const Index& idx : views[x].idx) {
        if (idx.name != s) ox[static_cast<std::size_t>(n_ox++)] = idx;
      }
      for (const Index& idx : views[y].idx) {
        if (idx.name != s) oy[static_cast<std::size_t>(n_oy++)] = idx;
      }
      FreshNames fresh(term);
      const Index t = fresh.adj_label();
      const Index& a = ox[0];
      const Index& b = ox[1];
      const Index& c = oy[0];
      const Index& d = oy[1];
      const NPoly third = NPoly::constant(GRational(Rational(1, 3)));
      auto base = [&]() {
        return with_factors_removed(term, {views[x].factor_index, views[y].factor_index});
      };
      Term t1 = base();
      t1.coeff *= third;
      t1.factors.push_back(Delta{a, c});
      t1.factors.push_back(Delta{b, d});
      Term t2 = base();
      t2.coeff *= third;
      t2.factors.push_back(Delta{a, d});
      t2.factors.push_back(Delta{b, c});
      Term t3 = base();
      t3.coeff *= -third;
      t3.factors.push_back(Delta{a, b});
      t3.factors.push_back(Delta{c, d});
      Term t4 = base();
      t4.coeff *= third;
      t4.factors.push_back(F3{{a, c, t}});
      t4.factors.push_back(F3{{b, d, t}});
      Term t5 = base();
      t5.coeff *= third;
      t5.factors.push_back(F3{{a, d, t}});
      t5.factors.push_back(F3{{b, c, t}});
      return RuleResult{"dd-expand-n3", views[x].factor_index,
                        {std::move(t1), std::move(t2), std::move(t3), std::move(t4),
                         std::move(t5)}};
    }
  }
  return std::nullopt;
}

std::optional<RuleResult> find_contract_rule(const Term& term, const RewriteOptions& opts,
                                             bool expand_allowed) {
  const TermIndexInfo info = analyze_term(term);
  if (auto r = rule_annihilate(term)) return r;
  if (auto r = rule_delta(term, info)) return r;
  if (auto r = rule_double_contraction(term, info)) return r;
  if (auto r = rule_triangle(term, info)) return r;
  if (expand_allowed) {
    if (opts.n3_pack) {
      if (auto r = rule_dd_expand_n3(term, info)) return r;
    } else {
      if (auto r = rule_ff_expand(term, info)) return r;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// expand_adjoint rules
// ---------------------------------------------------------------------------

std::optional<RuleResult> find_expand_rule(const Term& term) {
  for (std::size_t k = 0; k < term.factors.size(); ++k) {
    if (const auto* fe = std::get_if<FElem>(&term.factors[k])) {
      Term out = with_factors_removed(term, {k});
      out.coeff *= -NPoly::i_unit();
      out.factors.push_back(F3{{fe->a, fe->row, fe->col}});
      return RuleResult{"felem-def", k, {std::move(out)}};
    }
    if (const auto* de = std::get_if<DElem>(&term.factors[k])) {
      Term out = with_factors_removed(term, {k});
      out.factors.push_back(D3{{de->a, de->row, de->col}});
      return RuleResult{"delem-def", k, {std::move(out)}};
    }
    if (const auto* tr = std::get_if<TrAdj>(&term.factors[k])) {
      Term out = with_factors_removed(term, {k});
      FreshNames fresh(term);
      std::vector<Index> chain;
      for (std::size_t w = 0; w < tr->word.size(); ++w) chain.push_back(fresh.adj_label());
      for (std::size_t w = 0; w < tr->word.size(); ++w) {
        const Index& row = chain[w];
        const Index& col = chain[(w + 1) % chain.size()];
        if (tr->word[w].first == AdjKind::F) {
          out.coeff *= -NPoly::i_unit();
          out.factors.push_back(F3{{tr->word[w].second, row, col}});
        } else {
          out.factors.push_back(D3{{tr->word[w].second, row, col}});
        }
      }
      return RuleResult{"tradj-def", k, {std::move(out)}};
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Engine
// ---------------------------------------------------------------------------

enum class Stage { reduce, expand, contract };

[[maybe_unused]] bool measure_less(const std::vector<long long>& x,
                                   const std::vector<long long>& y) {
  return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
}

ColorExpr run_stage(Stage stage, const ColorExpr& input, const RewriteOptions& opts) {
  std::vector<Term> output;
  struct WorkItem {
    Term term;
    std::size_t origin;
  };
  std::deque<WorkItem> work;
  std::vector<int> live(input.terms.size(), 1);
  for (std::size_t k = 0; k < input.terms.size(); ++k) work.push_back({input.terms[k], k});

  while (!work.empty()) {
    WorkItem item = std::move(work.front());
    work.pop_front();
    if (item.term.coeff.is_zero()) {
      --live[item.origin];
      continue;
    }
    std::optional<RuleResult> rule;
    switch (stage) {
      case Stage::reduce:
        rule = find_reduce_rule(item.term);
        break;
      case Stage::expand:
        rule = find_expand_rule(item.term);
        break;
      case Stage::contract: {
        const bool expand_allowed =
            live[item.origin] + 4 <= opts.blowup_cap;  // worst growth of one application
        rule = find_contract_rule(item.term, opts, expand_allowed);
        break;
      }
    }
    if (!rule) {
      output.push_back(std::move(item.term));
      continue;
    }
#ifndef NDEBUG
    if (stage != Stage::expand) {
      const auto before_measure = stage == Stage::reduce
                                      ? reduce_measure(item.term)
                                      : contract_measure(item.term, opts.n3_pack);
      for (const Term& t : rule->replacements) {
        const auto after_measure =
            stage == Stage::reduce ? reduce_measure(t) : contract_measure(t, opts.n3_pack);
        assert(measure_less(after_measure, before_measure) && "rewrite measure must decrease");
      }
    }
#endif
    if (opts.log) {
      std::string after;
      for (std::size_t r = 0; r < rule->replacements.size(); ++r) {
        if (r > 0) after += "  +  ";
        after += print(rule->replacements[r]);
      }
      if (rule->replacements.empty()) after = "0";
      opts.log->push_back(
          {rule->rule_id, item.origin, rule->factor_index, print(item.term), after});
    }
    live[item.origin] += static_cast<int>(rule->replacements.size()) - 1;
    for (Term& t : rule->replacements) work.push_front({std::move(t), item.origin});
  }
  return ColorExpr{std::move(output)};
}

void require_no_traces(const ColorExpr& expr, const char* who) {
  for (const Term& term : expr.terms) {
    for (const Factor& f : term.factors) {
      if (std::holds_alternative<TrDef>(f) || std::holds_alternative<TrAdj>(f)) {
        throw std::invalid_argument(std::string(who) +
                                    ": input still contains trace factors; run "
                                    "reduce_defining/expand_adjoint first");
      }
    }
  }
}

}  // namespace

ColorExpr reduce_defining(const ColorExpr& expr, const RewriteOptions& opts) {
  return run_stage(Stage::reduce, canonicalize(expr), opts);
}

ColorExpr expand_adjoint(const ColorExpr& expr, const RewriteOptions& opts) {
  return run_stage(Stage::expand, canonicalize(expr), opts);
}

ColorExpr contract(const ColorExpr& expr, const RewriteOptions& opts) {
  ColorExpr canon = canonicalize(expr);
  require_no_traces(canon, "contract");
  return run_stage(Stage::contract, canon, opts);
}

ColorExpr simplify(const ColorExpr& expr, const RewriteOptions& opts) {
  ColorExpr current = canonicalize(expr);
  for (int iteration = 0; iteration < 16; ++iteration) {
    ColorExpr reduced = run_stage(Stage::reduce, current, opts);
    ColorExpr expanded = run_stage(Stage::expand, reduced, opts);
    ColorExpr contracted = run_stage(Stage::contract, expanded, opts);
    ColorExpr next = canonicalize(contracted);
    if (next == current) return current;
    current = std::move(next);
  }
  return current;
}

}  // namespace suncolor

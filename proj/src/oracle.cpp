#include "suncolor/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace suncolor {

OracleContext::OracleContext(int n)
    : n_(n),
      basis_(build_basis(n)),
      f_(extract_f(basis_)),
      d_(extract_d(basis_)),
      adjoint_(build_adjoint(f_, d_)) {
  const std::size_t d = static_cast<std::size_t>(dim());
  f_cube_.assign(d * d * d, 0.0);
  d_cube_.assign(d * d * d, 0.0);
  for (int a = 1; a <= dim(); ++a) {
    for (const auto& [bc, value] : f_.nonzeros_with_first(a)) {
      f_cube_[cube_offset(a, bc[0], bc[1])] = value;
    }
    for (const auto& [bc, value] : d_.nonzeros_with_first(a)) {
      d_cube_[cube_offset(a, bc[0], bc[1])] = value;
    }
  }
}

cplx OracleContext::trace_def(const std::vector<int>& word) const {
  if (word.empty()) return cplx(static_cast<double>(n_), 0.0);
  {
    std::lock_guard<std::mutex> lock(memo_mutex_);
    const auto it = def_trace_memo_.find(word);
    if (it != def_trace_memo_.end()) return it->second;
  }
  CMatrix product = basis_.generator(word.front());
  for (std::size_t k = 1; k < word.size(); ++k) {
    product = matmul(product, basis_.generator(word[k]));
  }
  const cplx value = product.trace();
  std::lock_guard<std::mutex> lock(memo_mutex_);
  def_trace_memo_.emplace(word, value);
  return value;
}

cplx OracleContext::trace_adj(const std::vector<std::pair<AdjKind, int>>& word) const {
  if (word.empty()) return cplx(static_cast<double>(dim()), 0.0);
  std::vector<int> key;
  key.reserve(word.size());
  for (const auto& [kind, label] : word) {
    key.push_back(label * 2 + (kind == AdjKind::D ? 1 : 0));
  }
  {
    std::lock_guard<std::mutex> lock(memo_mutex_);
    const auto it = adj_trace_memo_.find(key);
    if (it != adj_trace_memo_.end()) return it->second;
  }
  auto matrix = [this](const std::pair<AdjKind, int>& letter) -> const CMatrix& {
    return letter.first == AdjKind::F ? adjoint_.F(letter.second) : adjoint_.D(letter.second);
  };
  CMatrix product = matrix(word.front());
  for (std::size_t k = 1; k < word.size(); ++k) product = matmul(product, matrix(word[k]));
  const cplx value = product.trace();
  std::lock_guard<std::mutex> lock(memo_mutex_);
  adj_trace_memo_.emplace(key, value);
  return value;
}

std::shared_ptr<const OracleContext> OracleContext::get(int n) {
  static std::mutex cache_mutex;
  static std::map<int, std::shared_ptr<const OracleContext>> cache;
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto it = cache.find(n);
  if (it == cache.end()) {
    it = cache.emplace(n, std::make_shared<const OracleContext>(n)).first;
  }
  return it->second;
}

namespace {

struct TermEvaluator {
  const OracleContext& ctx;
  const Term& term;
  std::map<std::string, int>& values;  // label -> current value (0 = unset)
  std::vector<bool> done;              // per factor

  TermEvaluator(const OracleContext& context, const Term& t, std::map<std::string, int>& vals)
      : ctx(context), term(t), values(vals), done(t.factors.size(), false) {}

  static int range_of(const OracleContext& ctx, IndexSort sort) {
    return sort == IndexSort::fundamental ? ctx.n() : ctx.dim();
  }

  std::vector<const Index*> unassigned_slots(const Factor& f) const {
    std::vector<const Index*> out;
    for (const Index* slot : factor_slots(f)) {
      if (values.at(slot->name) == 0) out.push_back(slot);
    }
    return out;
  }

  cplx factor_value(const Factor& f) const {
    return std::visit(
        [this](const auto& node) -> cplx {
          using T = std::decay_t<decltype(node)>;
          auto v = [this](const Index& idx) { return values.at(idx.name); };
          if constexpr (std::is_same_v<T, Delta>) {
            return v(node.a) == v(node.b) ? 1.0 : 0.0;
          } else if constexpr (std::is_same_v<T, F3>) {
            return ctx.f_at(v(node.idx[0]), v(node.idx[1]), v(node.idx[2]));
          } else if constexpr (std::is_same_v<T, D3>) {
            return ctx.d_at(v(node.idx[0]), v(node.idx[1]), v(node.idx[2]));
          } else if constexpr (std::is_same_v<T, TElem>) {
            return ctx.basis().generator(v(node.a)).at(v(node.row) - 1, v(node.col) - 1);
          } else if constexpr (std::is_same_v<T, FElem>) {
            return ctx.adjoint().F(v(node.a)).at(v(node.row) - 1, v(node.col) - 1);
          } else if constexpr (std::is_same_v<T, DElem>) {
            return ctx.adjoint().D(v(node.a)).at(v(node.row) - 1, v(node.col) - 1);
          } else if constexpr (std::is_same_v<T, TrDef>) {
            std::vector<int> word;
            word.reserve(node.word.size());
            for (const Index& idx : node.word) word.push_back(v(idx));
            return ctx.trace_def(word);
          } else {
            std::vector<std::pair<AdjKind, int>> word;
            word.reserve(node.word.size());
            for (const auto& [kind, idx] : node.word) word.emplace_back(kind, v(idx));
            return ctx.trace_adj(word);
          }
        },
        f);
  }

  // Sums the product of all not-yet-evaluated factors over every
  // completion of the unassigned bound labels.  Factors with the fewest
  // unassigned labels are evaluated first so that zero values prune the
  // enumeration early.
  cplx sum_remaining() {
    int best = -1;
    std::size_t best_unassigned = 0;
    for (std::size_t k = 0; k < term.factors.size(); ++k) {
      if (done[k]) continue;
      const std::size_t u = unassigned_slots(term.factors[k]).size();
      if (best < 0 || u < best_unassigned) {
        best = static_cast<int>(k);
        best_unassigned = u;
      }
      if (best_unassigned == 0) break;
    }
    if (best < 0) return cplx(1.0, 0.0);  // nothing left
    const Factor& factor = term.factors[static_cast<std::size_t>(best)];
    done[static_cast<std::size_t>(best)] = true;
    cplx total(0.0, 0.0);
    if (best_unassigned == 0) {
      const cplx value = factor_value(factor);
      total = value == cplx(0.0, 0.0) ? cplx(0.0, 0.0) : value * sum_remaining();
    } else {
      // Distinct unassigned labels of this factor (a label may fill two
      // of its slots, e.g. f(x,e,e)).
      std::vector<std::pair<std::string, int>> labels;
      for (const Index* slot : unassigned_slots(factor)) {
        bool have = false;
        for (const auto& [name, range] : labels) have = have || name == slot->name;
        if (!have) labels.push_back({slot->name, range_of(ctx, slot->sort)});
      }
      std::vector<int> cursor(labels.size(), 1);
      bool more = true;
      while (more) {
        for (std::size_t k = 0; k < labels.size(); ++k) values[labels[k].first] = cursor[k];
        const cplx value = factor_value(factor);
        if (value != cplx(0.0, 0.0)) total += value * sum_remaining();
        // Advance the odometer.
        more = false;
        for (std::size_t k = 0; k < labels.size(); ++k) {
          if (cursor[k] < labels[k].second) {
            ++cursor[k];
            for (std::size_t j = 0; j < k; ++j) cursor[j] = 1;
            more = true;
            break;
          }
        }
      }
      for (const auto& [name, range] : labels) values[name] = 0;
    }
    done[static_cast<std::size_t>(best)] = false;
    return total;
  }
};

}  // namespace

cplx oracle_eval(const ColorExpr& expr, int n, const std::map<std::string, int>& assignment) {
  if (n < 2) throw std::invalid_argument("oracle_eval: n must be >= 2");
  const auto free = free_indices(expr);
  for (const auto& [name, value] : assignment) {
    const auto it = free.find(name);
    if (it == free.end()) {
      throw std::invalid_argument("oracle_eval: assignment names unknown free index '" + name +
                                  "'");
    }
    const int range = it->second == IndexSort::fundamental ? n : n * n - 1;
    if (value < 1 || value > range) {
      throw std::invalid_argument("oracle_eval: index '" + name + "' value " +
                                  std::to_string(value) + " outside 1.." + std::to_string(range));
    }
  }
  for (const auto& [name, sort] : free) {
    if (assignment.find(name) == assignment.end()) {
      throw std::invalid_argument("oracle_eval: free index '" + name + "' not assigned");
    }
  }
  const auto ctx = OracleContext::get(n);
  cplx total(0.0, 0.0);
  for (const Term& term : expr.terms) {
    std::map<std::string, int> values;
    for (const Factor& f : term.factors) {
      for (const Index* slot : factor_slots(f)) {
        if (is_constant_index(slot->name)) {
          const long long value = std::stoll(slot->name);
          const long long range = slot->sort == IndexSort::fundamental ? n : n * n - 1;
          if (value < 1 || value > range) {
            throw std::invalid_argument("oracle_eval: constant index " + slot->name +
                                        " outside 1.." + std::to_string(range));
          }
          values[slot->name] = static_cast<int>(value);
        } else {
          values[slot->name] = 0;
        }
      }
    }
    for (const auto& [name, value] : assignment) {
      const auto it = values.find(name);
      if (it != values.end()) it->second = value;
    }
    TermEvaluator evaluator(*ctx, term, values);
    total += term.coeff.eval_complex(n) * evaluator.sum_remaining();
  }
  return total;
}

SamplingVerdict equal_by_sampling(const ColorExpr& a, const ColorExpr& b,
                                  const std::vector<int>& n_set, int samples, double tol,
                                  unsigned long long seed) {
  const auto free_a = free_indices(a);
  const auto free_b = free_indices(b);
  // One side may have lost indices by simplifying to a value independent
  // of them (typically zero); anything else is a caller error.
  std::map<std::string, IndexSort> unioned = free_a;
  for (const auto& [name, sort] : free_b) {
    const auto it = unioned.find(name);
    if (it == unioned.end()) {
      unioned[name] = sort;
    } else if (it->second != sort) {
      throw std::invalid_argument("equal_by_sampling: free index '" + name +
                                  "' has different sorts on the two sides");
    }
  }
  const bool nested = free_a.size() == unioned.size() || free_b.size() == unioned.size();
  if (!nested) {
    throw std::invalid_argument("equal_by_sampling: expressions have different free indices");
  }
  SamplingVerdict verdict;
  for (const int n : n_set) {
    std::mt19937_64 rng(seed * 1000003ULL + static_cast<unsigned long long>(n));
    for (int s = 0; s < samples; ++s) {
      std::map<std::string, int> assignment, assign_a, assign_b;
      for (const auto& [name, sort] : unioned) {
        const int range = sort == IndexSort::fundamental ? n : n * n - 1;
        const int value = 1 + static_cast<int>(rng() % static_cast<unsigned long long>(range));
        assignment[name] = value;
        if (free_a.count(name) > 0) assign_a[name] = value;
        if (free_b.count(name) > 0) assign_b[name] = value;
      }
      const cplx va = oracle_eval(a, n, assign_a);
      const cplx vb = oracle_eval(b, n, assign_b);
      const double residual =
          std::abs(va - vb) / (1.0 + std::max(std::abs(va), std::abs(vb)));
      if (residual > verdict.worst.residual) {
        verdict.worst = {n, assignment, residual, va, vb};
      }
      if (residual > tol) verdict.equal = false;
    }
  }
  return verdict;
}

}  // namespace suncolor

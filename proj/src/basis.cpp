#include "suncolor/basis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace suncolor {

GeneratorBasis::GeneratorBasis(int n, std::vector<CMatrix> generators)
    : n_(n), gens_(std::move(generators)) {
  if (n_ < 2) throw std::invalid_argument("GeneratorBasis: n must be >= 2");
  if (gens_.size() != static_cast<std::size_t>(dim())) {
    throw std::invalid_argument("GeneratorBasis: expected " + std::to_string(dim()) +
                                " generators, got " + std::to_string(gens_.size()));
  }
}

const CMatrix& GeneratorBasis::generator(int a) const {
  if (a < 1 || a > dim()) {
    throw std::invalid_argument("GeneratorBasis: label " + std::to_string(a) +
                                " outside 1.." + std::to_string(dim()));
  }
  return gens_[static_cast<std::size_t>(a - 1)];
}

GeneratorBasis build_basis(int n) {
  if (n < 2) throw std::invalid_argument("build_basis: n must be >= 2, got " + std::to_string(n));
  const std::size_t nn = static_cast<std::size_t>(n);
  std::vector<CMatrix> gens;
  gens.reserve(static_cast<std::size_t>(n * n - 1));
  for (std::size_t j = 1; j < nn; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      CMatrix sym(nn, nn);
      sym.at(i, j) = 0.5;
      sym.at(j, i) = 0.5;
      gens.push_back(sym);
      CMatrix asym(nn, nn);
      asym.at(i, j) = cplx(0.0, -0.5);
      asym.at(j, i) = cplx(0.0, 0.5);
      gens.push_back(asym);
    }
    // Diagonal generator for k = j: diag(1,..,1,-k,0,..)/sqrt(2k(k+1)).
    const double k = static_cast<double>(j);
    const double scale = 1.0 / std::sqrt(2.0 * k * (k + 1.0));
    CMatrix diag(nn, nn);
    for (std::size_t l = 0; l < j; ++l) diag.at(l, l) = scale;
    diag.at(j, j) = -k * scale;
    gens.push_back(diag);
  }
  return GeneratorBasis(n, std::move(gens));
}

Rank3Tensor::Rank3Tensor(int n, TensorSymmetry symmetry) : n_(n), sym_(symmetry) {
  if (n_ < 2) throw std::invalid_argument("Rank3Tensor: n must be >= 2");
}

void Rank3Tensor::check_range(int a, int b, int c) const {
  const int d = dim();
  if (a < 1 || a > d || b < 1 || b > d || c < 1 || c > d) {
    throw std::invalid_argument("Rank3Tensor: index out of range 1.." + std::to_string(d) +
                                ": (" + std::to_string(a) + "," + std::to_string(b) + "," +
                                std::to_string(c) + ")");
  }
}

namespace {

// Sorts a triple in place, returning the permutation sign.
int sort3(std::array<int, 3>& t) {
  int sign = 1;
  if (t[0] > t[1]) { std::swap(t[0], t[1]); sign = -sign; }
  if (t[1] > t[2]) { std::swap(t[1], t[2]); sign = -sign; }
  if (t[0] > t[1]) { std::swap(t[0], t[1]); sign = -sign; }
  return sign;
}

}  // namespace

double Rank3Tensor::get(int a, int b, int c) const {
  check_range(a, b, c);
  std::array<int, 3> key{a, b, c};
  const int sign = sort3(key);
  if (sym_ == TensorSymmetry::antisymmetric && (key[0] == key[1] || key[1] == key[2])) {
    return 0.0;
  }
  const auto it = entries_.find(key);
  if (it == entries_.end()) return 0.0;
  return sym_ == TensorSymmetry::antisymmetric ? sign * it->second : it->second;
}

void Rank3Tensor::set(int a, int b, int c, double value) {
  check_range(a, b, c);
  std::array<int, 3> key{a, b, c};
  const int sign = sort3(key);
  if (sym_ == TensorSymmetry::antisymmetric && (key[0] == key[1] || key[1] == key[2])) {
    if (value != 0.0) {
      throw std::invalid_argument("Rank3Tensor: repeated index in antisymmetric tensor");
    }
    return;
  }
  const double canonical = sym_ == TensorSymmetry::antisymmetric ? sign * value : value;
  if (canonical == 0.0) {
    entries_.erase(key);
  } else {
    entries_[key] = canonical;
  }
}

std::vector<std::pair<std::array<int, 2>, double>> Rank3Tensor::nonzeros_with_first(int a) const {
  std::vector<std::pair<std::array<int, 2>, double>> out;
  for (const auto& [key, value] : entries_) {
    // Expand the canonical entry into the ordered triples that start with a.
    std::array<int, 3> t = key;
    std::sort(t.begin(), t.end());
    static constexpr int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                        {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    static constexpr int signs[6] = {1, -1, -1, 1, 1, -1};
    for (int p = 0; p < 6; ++p) {
      const int pa = t[perms[p][0]], pb = t[perms[p][1]], pc = t[perms[p][2]];
      if (pa != a) continue;
      // Skip duplicate permutations when labels repeat (symmetric case).
      bool dup = false;
      for (int q = 0; q < p; ++q) {
        if (t[perms[q][0]] == pa && t[perms[q][1]] == pb && t[perms[q][2]] == pc) {
          dup = true;
          break;
        }
      }
      if (dup) continue;
      const double v = sym_ == TensorSymmetry::antisymmetric ? signs[p] * value : value;
      out.push_back({{pb, pc}, v});
    }
  }
  return out;
}

namespace {

// trace(m * t) without forming the product.
cplx trace_of_product(const CMatrix& m, const CMatrix& t) {
  cplx total = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) total += m.at(i, j) * t.at(j, i);
  return total;
}

Rank3Tensor extract_tensor(const GeneratorBasis& basis, TensorSymmetry sym, double tol,
                           double prune) {
  const int dim = basis.dim();
  Rank3Tensor out(basis.n(), sym);
  const bool anti = sym == TensorSymmetry::antisymmetric;
  const char* tensor_name = anti ? "f" : "d";
  // Each unordered triple is visited from several ordered (a,b) pairs;
  // the redundant evaluations double as a symmetry integrity check.
  std::map<std::array<int, 3>, double> seen;
  for (int a = 1; a <= dim; ++a) {
    for (int b = anti ? a + 1 : a; b <= dim; ++b) {
      const CMatrix pair_matrix = anti ? commutator(basis.generator(a), basis.generator(b))
                                       : anticommutator(basis.generator(a), basis.generator(b));
      for (int c = 1; c <= dim; ++c) {
        const cplx raw = trace_of_product(pair_matrix, basis.generator(c));
        const cplx value = anti ? cplx(0.0, -2.0) * raw : 2.0 * raw;
        if (std::abs(value.imag()) > tol) {
          throw IntegrityError(std::string("extract_") + tensor_name + ": entry (" +
                               std::to_string(a) + "," + std::to_string(b) + "," +
                               std::to_string(c) + ") has imaginary part " +
                               std::to_string(value.imag()));
        }
        std::array<int, 3> key{a, b, c};
        const int sign = sort3(key);
        if (anti && (key[0] == key[1] || key[1] == key[2])) {
          if (std::abs(value.real()) > tol) {
            throw IntegrityError("extract_f: repeated-index entry (" + std::to_string(a) + "," +
                                 std::to_string(b) + "," + std::to_string(c) +
                                 ") is nonzero: " + std::to_string(value.real()));
          }
          continue;
        }
        const double canonical = anti ? sign * value.real() : value.real();
        const auto it = seen.find(key);
        if (it == seen.end()) {
          seen.emplace(key, canonical);
        } else if (std::abs(it->second - canonical) > tol) {
          throw IntegrityError(std::string("extract_") + tensor_name +
                               ": symmetry violation at canonical triple (" +
                               std::to_string(key[0]) + "," + std::to_string(key[1]) + "," +
                               std::to_string(key[2]) + "): " + std::to_string(it->second) +
                               " vs " + std::to_string(canonical));
        }
      }
    }
  }
  for (const auto& [key, value] : seen) {
    if (std::abs(value) >= prune) out.set(key[0], key[1], key[2], value);
  }
  return out;
}

}  // namespace

Rank3Tensor extract_f(const GeneratorBasis& basis, double tol, double prune) {
  return extract_tensor(basis, TensorSymmetry::antisymmetric, tol, prune);
}

Rank3Tensor extract_d(const GeneratorBasis& basis, double tol, double prune) {
  return extract_tensor(basis, TensorSymmetry::symmetric, tol, prune);
}

namespace {

void require_proportional_to_identity(const CMatrix& m, const Rational& scalar, double tol,
                                      const char* what) {
  CMatrix expected = CMatrix::identity(m.rows());
  expected *= cplx(scalar.to_double(), 0.0);
  if (!approx_equal(m, expected, tol)) {
    throw IntegrityError(std::string(what) + ": sum deviates from " + scalar.str() +
                         " * identity by " + std::to_string(max_abs_diff(m, expected)));
  }
}

}  // namespace

std::pair<CMatrix, Rational> casimir2_defining(const GeneratorBasis& basis, double tol) {
  const std::size_t n = static_cast<std::size_t>(basis.n());
  CMatrix sum(n, n);
  for (const CMatrix& t : basis.generators()) sum += matmul(t, t);
  const long long nn = basis.n();
  const Rational cf(nn * nn - 1, 2 * nn);
  require_proportional_to_identity(sum, cf, tol, "casimir2_defining");
  return {sum, cf};
}

std::pair<CMatrix, Rational> casimir3_defining(const GeneratorBasis& basis, const Rank3Tensor& d,
                                               double tol) {
  if (d.n() != basis.n()) {
    throw std::invalid_argument("casimir3_defining: tensor n=" + std::to_string(d.n()) +
                                " does not match basis n=" + std::to_string(basis.n()));
  }
  if (d.symmetry() != TensorSymmetry::symmetric) {
    throw std::invalid_argument("casimir3_defining: expected the symmetric tensor");
  }
  const std::size_t n = static_cast<std::size_t>(basis.n());
  const int dim = basis.dim();
  CMatrix sum(n, n);
  for (int a = 1; a <= dim; ++a) {
    // Inner matrix sum_bc d_abc T^b T^c, then one product with T^a.
    CMatrix inner(n, n);
    for (const auto& [bc, value] : d.nonzeros_with_first(a)) {
      CMatrix prod = matmul(basis.generator(bc[0]), basis.generator(bc[1]));
      prod *= cplx(value, 0.0);
      inner += prod;
    }
    sum += matmul(basis.generator(a), inner);
  }
  const long long nn = basis.n();
  const Rational c3f((nn * nn - 1) * (nn * nn - 4), 4 * nn * nn);
  require_proportional_to_identity(sum, c3f, tol, "casimir3_defining");
  return {sum, c3f};
}

}  // namespace suncolor

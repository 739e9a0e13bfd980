#ifndef SUNCOLOR_NPOLY_HPP
#define SUNCOLOR_NPOLY_HPP

#include <complex>
#include <map>
#include <string>

#include "suncolor/rational.hpp"

namespace suncolor {

/// Exact Laurent polynomial in the symbol N with Gaussian-rational
/// coefficients: sum of c_k * N^k over integer k (possibly negative).
/// Zero coefficients are never stored, so structural equality is
/// semantic equality.
class NPoly {
 public:
  NPoly() = default;

  static NPoly constant(GRational c);
  static NPoly integer(long long v) { return constant(GRational(Rational(v))); }
  static NPoly rational(const Rational& r) { return constant(GRational(r)); }
  static NPoly i_unit() { return constant(GRational::i_unit()); }
  static NPoly variable();                      // N
  static NPoly monomial(GRational c, int pow);  // c * N^pow

  bool is_zero() const { return mono_.empty(); }
  bool is_one() const;
  bool is_minus_one() const;

  /// Single monomial accessors; valid only when is_monomial().
  bool is_monomial() const { return mono_.size() == 1; }
  bool is_constant() const;
  GRational constant_value() const;  // requires is_constant() (zero gives 0)

  const std::map<int, GRational>& monomials() const { return mono_; }

  NPoly operator-() const;
  friend NPoly operator+(const NPoly& a, const NPoly& b);
  friend NPoly operator-(const NPoly& a, const NPoly& b);
  friend NPoly operator*(const NPoly& a, const NPoly& b);
  NPoly& operator+=(const NPoly& o) { return *this = *this + o; }
  NPoly& operator-=(const NPoly& o) { return *this = *this - o; }
  NPoly& operator*=(const NPoly& o) { return *this = *this * o; }

  /// Exact division.  The divisor must be a single Laurent monomial,
  /// otherwise the quotient would leave the Laurent ring and a
  /// std::domain_error is thrown.
  NPoly divide(const NPoly& divisor) const;

  /// Integer power; negative exponents require a monomial base.
  NPoly pow(int exponent) const;

  friend bool operator==(const NPoly& a, const NPoly& b) { return a.mono_ == b.mono_; }
  friend bool operator!=(const NPoly& a, const NPoly& b) { return !(a == b); }

  /// Exact evaluation at integer n >= 1.
  GRational eval_exact(long long n) const;
  std::complex<double> eval_complex(long long n) const { return eval_exact(n).to_complex(); }

  /// Rendering that the expression parser accepts back; compound values
  /// are parenthesized ("((1/2)*i*NN)", "(NN^2 - 1)").
  std::string str() const;

  /// True when str() would start with a minus sign once unparenthesized;
  /// used by the printer to fold signs into "a - b" at the term joins.
  bool display_negative() const;

 private:
  std::map<int, GRational> mono_;

  void insert(int pow, const GRational& c);
  std::string str_inner(bool* needs_parens) const;
};

}  // namespace suncolor

#endif

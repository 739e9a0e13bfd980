#ifndef SUNCOLOR_RATIONAL_HPP
#define SUNCOLOR_RATIONAL_HPP

#include <complex>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace suncolor {

/// Exact rational with 64-bit numerator/denominator, normalized so that
/// gcd(num, den) == 1 and den > 0.  Intermediate products run through
/// 128-bit arithmetic and throw std::overflow_error instead of wrapping.
class Rational {
 public:
  Rational() = default;
  Rational(long long value) : num_(value), den_(1) {}  // NOLINT: implicit by design
  Rational(long long num, long long den) : num_(num), den_(den) { normalize(); }

  long long num() const { return num_; }
  long long den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  bool is_negative() const { return num_ < 0; }

  Rational operator-() const { return Rational(-num_, den_); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational::from128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                             i128(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational::from128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
    return Rational::from128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// "p" or "p/q".
  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  using i128 = __int128;
  long long num_ = 0;
  long long den_ = 1;

  void normalize() {
    if (den_ == 0) throw std::domain_error("Rational: zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  static Rational from128(i128 num, i128 den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    i128 a = num < 0 ? -num : num;
    i128 b = den;
    while (b != 0) {
      i128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      num /= a;
      den /= a;
    }
    const i128 lim = INT64_MAX;
    if (num > lim || num < -lim || den > lim) {
      throw std::overflow_error("Rational: 64-bit overflow");
    }
    Rational r;
    r.num_ = static_cast<long long>(num);
    r.den_ = static_cast<long long>(den);
    return r;
  }
};

/// a + b*i with exact rational parts.
struct GRational {
  Rational re;
  Rational im;

  GRational() = default;
  GRational(Rational real) : re(real) {}  // NOLINT: implicit by design
  GRational(Rational real, Rational imag) : re(real), im(imag) {}

  static GRational i_unit() { return GRational(Rational(0), Rational(1)); }

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool is_real() const { return im.is_zero(); }

  GRational operator-() const { return GRational(-re, -im); }

  friend GRational operator+(const GRational& a, const GRational& b) {
    return GRational(a.re + b.re, a.im + b.im);
  }
  friend GRational operator-(const GRational& a, const GRational& b) { return a + (-b); }
  friend GRational operator*(const GRational& a, const GRational& b) {
    return GRational(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
  }
  friend GRational operator/(const GRational& a, const GRational& b) {
    const Rational n = b.re * b.re + b.im * b.im;
    if (n.is_zero()) throw std::domain_error("GRational: division by zero");
    return GRational((a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n);
  }

  friend bool operator==(const GRational& a, const GRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GRational& a, const GRational& b) { return !(a == b); }

  std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }
};

}  // namespace suncolor

#endif

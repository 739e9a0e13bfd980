#include "suncolor/npoly.hpp"

#include <stdexcept>

namespace suncolor {

void NPoly::insert(int pow, const GRational& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = mono_.try_emplace(pow, c);
  if (!fresh) {
    it->second = it->second + c;
    if (it->second.is_zero()) mono_.erase(it);
  }
}

NPoly NPoly::constant(GRational c) {
  NPoly p;
  p.insert(0, c);
  return p;
}

NPoly NPoly::variable() {
  NPoly p;
  p.insert(1, GRational(Rational(1)));
  return p;
}

NPoly NPoly::monomial(GRational c, int pow) {
  NPoly p;
  p.insert(pow, c);
  return p;
}

bool NPoly::is_one() const {
  return mono_.size() == 1 && mono_.begin()->first == 0 &&
         mono_.begin()->second == GRational(Rational(1));
}

bool NPoly::is_minus_one() const {
  return mono_.size() == 1 && mono_.begin()->first == 0 &&
         mono_.begin()->second == GRational(Rational(-1));
}

bool NPoly::is_constant() const {
  return mono_.empty() || (mono_.size() == 1 && mono_.begin()->first == 0);
}

GRational NPoly::constant_value() const {
  if (mono_.empty()) return GRational();
  if (!is_constant()) throw std::logic_error("NPoly: not a constant");
  return mono_.begin()->second;
}

NPoly NPoly::operator-() const {
  NPoly out;
  for (const auto& [k, c] : mono_) out.mono_.emplace(k, -c);
  return out;
}

NPoly operator+(const NPoly& a, const NPoly& b) {
  NPoly out = a;
  for (const auto& [k, c] : b.mono_) out.insert(k, c);
  return out;
}

NPoly operator-(const NPoly& a, const NPoly& b) { return a + (-b); }

NPoly operator*(const NPoly& a, const NPoly& b) {
  NPoly out;
  for (const auto& [ka, ca] : a.mono_)
    for (const auto& [kb, cb] : b.mono_) out.insert(ka + kb, ca * cb);
  return out;
}

NPoly NPoly::divide(const NPoly& divisor) const {
  if (divisor.is_zero()) throw std::domain_error("NPoly: division by zero");
  if (!divisor.is_monomial()) {
    throw std::domain_error("NPoly: division only by a single monomial in N is exact here");
  }
  const auto& [k0, c0] = *divisor.mono_.begin();
  NPoly out;
  for (const auto& [k, c] : mono_) out.insert(k - k0, c / c0);
  return out;
}

NPoly NPoly::pow(int exponent) const {
  if (exponent == 0) return NPoly::integer(1);
  if (exponent < 0) return NPoly::integer(1).divide(this->pow(-exponent));
  NPoly out = NPoly::integer(1);
  for (int k = 0; k < exponent; ++k) out *= *this;
  return out;
}

GRational NPoly::eval_exact(long long n) const {
  if (n < 1) throw std::domain_error("NPoly: evaluation requires n >= 1");
  GRational total;
  for (const auto& [k, c] : mono_) {
    Rational p(1);
    for (int j = 0; j < (k < 0 ? -k : k); ++j) p *= Rational(n);
    if (k < 0) p = Rational(1) / p;
    total = total + c * GRational(p);
  }
  return total;
}

namespace {

// Magnitude rendering of one monomial (sign handled by the caller).
std::string monomial_body(const GRational& c, int k) {
  std::string out;
  const bool pure_real = c.im.is_zero();
  const bool pure_imag = c.re.is_zero() && !c.im.is_zero();
  if (pure_real) {
    if (!(c.re == Rational(1)) || k == 0) out = c.re.str();
  } else if (pure_imag) {
    if (!(c.im == Rational(1))) out = c.im.str() + "*i";
    else out = "i";
  } else {
    std::string im_part = c.im == Rational(1)    ? "i"
                          : c.im == Rational(-1) ? "-i"
                                                 : c.im.str() + "*i";
    if (!im_part.empty() && im_part[0] != '-') im_part = "+" + im_part;
    out = "(" + c.re.str() + im_part + ")";
  }
  if (k != 0) {
    if (!out.empty()) out += "*";
    out += "NN";
    if (k != 1) out += "^" + std::to_string(k);
  }
  if (out.empty()) out = "1";
  return out;
}

// Sign extraction for display: real part first, then imaginary.
bool mono_negative(const GRational& c) {
  if (!c.re.is_zero()) return c.re.is_negative();
  return c.im.is_negative();
}

}  // namespace

bool NPoly::display_negative() const {
  if (mono_.empty()) return false;
  const auto& lead = mono_.rbegin()->second;
  if (!lead.re.is_zero() && !lead.im.is_zero()) return false;
  return mono_negative(lead);
}

std::string NPoly::str_inner(bool* needs_parens) const {
  if (mono_.empty()) {
    *needs_parens = false;
    return "0";
  }
  std::string out;
  bool first = true;
  for (auto it = mono_.rbegin(); it != mono_.rend(); ++it) {
    const int k = it->first;
    GRational c = it->second;
    const bool neg = mono_negative(c) && (c.re.is_zero() || c.im.is_zero());
    if (neg) c = -c;
    if (first) {
      out += neg ? "-" : "";
    } else {
      out += neg ? " - " : " + ";
    }
    out += monomial_body(c, k);
    first = false;
  }
  if (mono_.size() > 1) {
    *needs_parens = true;
  } else {
    // Bare atoms the grammar accepts as a coefficient without parentheses.
    const bool simple = out == "i" || out == "NN" ||
                        (out.find_first_not_of("0123456789/") == std::string::npos);
    *needs_parens = !simple;
  }
  return out;
}

std::string NPoly::str() const {
  bool parens = false;
  std::string body = str_inner(&parens);
  return parens ? "(" + body + ")" : body;
}

}  // namespace suncolor

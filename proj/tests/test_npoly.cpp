#include "doctest.h"
#include "suncolor/npoly.hpp"

using namespace suncolor;

TEST_CASE("rational normalization and arithmetic") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(1, -2) == Rational(-1, 2));
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(1, 2) * Rational(2, 3) == Rational(1, 3));
  CHECK(Rational(1, 2) / Rational(1, 4) == Rational(2));
  CHECK(Rational(-3).str() == "-3");
  CHECK(Rational(3, 4).str() == "3/4");
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
  CHECK_THROWS_AS(Rational(INT64_MAX) * Rational(3), std::overflow_error);
}

TEST_CASE("gaussian rational arithmetic") {
  const GRational i = GRational::i_unit();
  CHECK(i * i == GRational(Rational(-1)));
  const GRational z(Rational(1, 2), Rational(3, 4));
  CHECK(z * GRational(Rational(2)) == GRational(Rational(1), Rational(3, 2)));
  CHECK(z / z == GRational(Rational(1)));
}

TEST_CASE("npoly arithmetic and evaluation") {
  const NPoly n = NPoly::variable();
  const NPoly p = n * n - NPoly::integer(4);  // N^2 - 4
  CHECK(p.eval_exact(3) == GRational(Rational(5)));
  CHECK(p.eval_exact(2) == GRational(Rational(0)));

  const NPoly q = p.divide(NPoly::integer(2) * n);  // (N^2-4)/(2N)
  CHECK(q.eval_exact(3) == GRational(Rational(5, 6)));

  // Division by a non-monomial leaves the Laurent ring.
  CHECK_THROWS_AS(p.divide(n + NPoly::integer(1)), std::domain_error);

  CHECK(n.pow(0).is_one());
  CHECK(n.pow(-2).eval_exact(2) == GRational(Rational(1, 4)));
  CHECK((NPoly::i_unit() * NPoly::i_unit() + NPoly::integer(1)).is_zero());
}

TEST_CASE("npoly canonical string forms") {
  const NPoly n = NPoly::variable();
  CHECK(NPoly::integer(0).str() == "0");
  CHECK(NPoly::integer(1).str() == "1");
  CHECK(NPoly::integer(-1).str() == "(-1)");
  CHECK(NPoly::rational(Rational(3, 4)).str() == "3/4");
  CHECK(NPoly::i_unit().str() == "i");
  CHECK(n.str() == "NN");
  CHECK((n * n).str() == "(NN^2)");
  CHECK((NPoly::rational(Rational(1, 2)) * NPoly::i_unit() * n).str() == "(1/2*i*NN)");
  CHECK((n - NPoly::monomial(GRational(Rational(4)), -1)).str() == "(NN - 4*NN^-1)");
  CHECK((n * n - NPoly::integer(1)).str() == "(NN^2 - 1)");
}

TEST_CASE("npoly display sign") {
  const NPoly n = NPoly::variable();
  CHECK((-n).display_negative());
  CHECK_FALSE(n.display_negative());
  CHECK((-NPoly::i_unit()).display_negative());
  CHECK((NPoly::integer(1) - n).display_negative());  // leading power negative
}

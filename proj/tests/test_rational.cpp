#include <doctest.h>

#include "graphck/io.hpp"
#include "graphck/rational.hpp"

using namespace graphck;

TEST_CASE("rationals reduce and normalize signs") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(3, -6) == Rational(-1, 2));
  CHECK(Rational(0, 7) == Rational(0));
  CHECK(Rational(-2, -4) == Rational(1, 2));
  CHECK_THROWS_AS(Rational(1, 0), PreconditionError);
}

TEST_CASE("rational arithmetic is exact") {
  Rational a(1, 3), b(1, 6);
  CHECK(a + b == Rational(1, 2));
  CHECK(a - b == Rational(1, 6));
  CHECK(a * b == Rational(1, 18));
  CHECK(a / b == Rational(2));
  CHECK(a < Rational(1, 2));
  CHECK(Rational(-3, 2).to_string() == "-3/2");
  CHECK(Rational(5).to_string() == "5");
}

TEST_CASE("scalar modulus and conjugation") {
  Scalar z(Rational(3, 5), Rational(4, 5));
  CHECK(z.norm2() == Rational(1));
  CHECK(z.conj().im == Rational(-4, 5));
  Scalar i(Rational(0), Rational(1));
  CHECK((i * i).re == Rational(-1));
  CHECK((z * z.conj()).im == Rational(0));
}

TEST_CASE("scalar literals round-trip") {
  CHECK(parse_scalar("2") == Scalar(Rational(2)));
  CHECK(parse_scalar("-1") == Scalar(Rational(-1)));
  CHECK(parse_scalar("1/2+3/4i") == Scalar(Rational(1, 2), Rational(3, 4)));
  CHECK(parse_scalar("1-2i") == Scalar(Rational(1), Rational(-2)));
  CHECK(parse_scalar("i") == Scalar(Rational(0), Rational(1)));
  CHECK(parse_scalar("-i") == Scalar(Rational(0), Rational(-1)));
  CHECK(parse_scalar("3i") == Scalar(Rational(0), Rational(3)));
  CHECK(format_scalar(Scalar(Rational(1, 2), Rational(-3, 4))) == "1/2-3/4i");
  CHECK(format_scalar(Scalar(Rational(2))) == "2");
  CHECK(format_scalar(Scalar(Rational(0), Rational(1))) == "1i");
  CHECK_THROWS_AS(parse_scalar("abc"), ParseError);
}

#include "doctest.h"

#include <stdexcept>

#include "heatalg/lambda_poly.hpp"
#include "heatalg/text.hpp"

using heatalg::LambdaMono;
using heatalg::LambdaPoly;
using heatalg::Rational;

TEST_SUITE("lambda-poly") {

TEST_CASE("factories and atom conventions") {
  CHECK(LambdaPoly::zero(2).is_zero());
  CHECK(LambdaPoly::one(2).constant_value() == Rational(1));
  CHECK(heatalg::render(LambdaPoly::variable(2, 4)) == "l4");
  CHECK(heatalg::render(LambdaPoly::variable(3, 8)) == "l8");
  CHECK_THROWS_AS(LambdaPoly::variable(2, 8), std::out_of_range);
  CHECK_THROWS_AS(LambdaPoly::variable(2, 5), std::out_of_range);
  CHECK_THROWS_AS(LambdaPoly(0), std::invalid_argument);

  // Folding flavor: lambda_0 = 1, lambda_2 = 0, out-of-range and odd fold to 0.
  CHECK(LambdaPoly::lambda_atom(2, 0) == LambdaPoly::one(2));
  CHECK(LambdaPoly::lambda_atom(2, 2).is_zero());
  CHECK(LambdaPoly::lambda_atom(2, -4).is_zero());
  CHECK(LambdaPoly::lambda_atom(2, 8).is_zero());
  CHECK(LambdaPoly::lambda_atom(2, 4) == LambdaPoly::variable(2, 4));

  // Checked flavor treats the same indices as caller bugs.
  CHECK(LambdaPoly::lambda_checked(2, 0) == LambdaPoly::one(2));
  CHECK(LambdaPoly::lambda_checked(2, 6) == LambdaPoly::variable(2, 6));
  CHECK_THROWS_AS(LambdaPoly::lambda_checked(2, 2), std::logic_error);
  CHECK_THROWS_AS(LambdaPoly::lambda_checked(2, 8), std::logic_error);
}

TEST_CASE("ring operations") {
  LambdaPoly l4 = LambdaPoly::variable(2, 4);
  LambdaPoly l6 = LambdaPoly::variable(2, 6);
  CHECK(heatalg::render(l4 + l6) == "l4 + l6");
  CHECK(heatalg::render(l4 - l6) == "l4 - l6");
  CHECK((l4 - l4).is_zero());
  CHECK(heatalg::render(l4 * l6) == "l4*l6");
  CHECK(heatalg::render(l4 * l4) == "l4^2");
  CHECK(heatalg::render(-l4) == "-l4");
  CHECK(heatalg::render(l4.scaled(Rational(-2, 3))) == "-2/3*l4");
  CHECK(heatalg::render(Rational(2) * l4 + l4) == "3*l4");
  CHECK((l4 * LambdaPoly::zero(2)).is_zero());

  // Distributivity on a small product.
  LambdaPoly a = l4 + l6.scaled(Rational(2));
  LambdaPoly b = l4.scaled(Rational(1, 2)) - l6;
  CHECK(a * b == l4 * b + l6.scaled(Rational(2)) * b);

  CHECK_THROWS_AS(LambdaPoly::variable(2, 4) + LambdaPoly::variable(3, 4),
                  std::invalid_argument);
}

TEST_CASE("derivative in a lambda direction") {
  LambdaPoly l4 = LambdaPoly::variable(2, 4);
  LambdaPoly l6 = LambdaPoly::variable(2, 6);
  LambdaPoly p = l4 * l4 * l6;  // l4^2 l6
  CHECK(heatalg::render(p.d_lambda(4)) == "2*l4*l6");
  CHECK(heatalg::render(p.d_lambda(6)) == "l4^2");
  CHECK(LambdaPoly::one(2).d_lambda(4).is_zero());
  CHECK_THROWS_AS(p.d_lambda(8), std::out_of_range);
}

TEST_CASE("grading queries") {
  // wt lambda_k = k, so l4^2 l6 has weight 14.
  LambdaPoly l4 = LambdaPoly::variable(2, 4);
  LambdaPoly l6 = LambdaPoly::variable(2, 6);
  LambdaPoly p = l4 * l4 * l6;
  CHECK(p.is_homogeneous_of_weight(14));
  CHECK(p.is_homogeneous());
  CHECK(LambdaPoly::zero(2).is_homogeneous());

  LambdaPoly mixed = p + l4;
  CHECK_FALSE(mixed.is_homogeneous());
  CHECK(mixed.weight_component(4) == l4);
  CHECK(mixed.weight_component(14) == p);
  CHECK(mixed.weight_component(6).is_zero());
  CHECK(mixed.degree() == 3);
  CHECK(LambdaPoly::zero(2).degree() == -1);
}

TEST_CASE("monomial weight and order") {
  CHECK(heatalg::lambda_mono_weight(LambdaMono{1, 1}) == 10);
  CHECK(heatalg::lambda_mono_weight(LambdaMono{0, 0, 2}) == 16);
  // Rendering follows the graded-lex order, lowest weight first.
  LambdaPoly p(2);
  p.add_term(LambdaMono{0, 2}, Rational(1));  // weight 12
  p.add_term(LambdaMono{1, 0}, Rational(1));  // weight 4
  CHECK(heatalg::render(p) == "l4 + l6^2");
}

}  // TEST_SUITE

#include "doctest.h"

#include <stdexcept>

#include "heatalg/context.hpp"
#include "heatalg/generators.hpp"
#include "heatalg/schrodinger.hpp"
#include "heatalg/text.hpp"
#include "heatalg/vector_field.hpp"

using heatalg::GenusContext;
using heatalg::LambdaPoly;
using heatalg::LambdaVectorField;
using heatalg::Rational;
using heatalg::SchrodingerOperator;
using heatalg::WeylOperator;

namespace {

LambdaVectorField fld(int n, int target, const LambdaPoly& c) {
  LambdaVectorField v(n);
  v.add_term(target, c);
  return v;
}

}  // namespace

TEST_SUITE("vector-field") {

TEST_CASE("term management and application") {
  int n = 2;
  LambdaPoly l4 = LambdaPoly::variable(n, 4);
  LambdaPoly l6 = LambdaPoly::variable(n, 6);

  LambdaVectorField v = fld(n, 4, l6);                 // l6 d/dl4
  CHECK(v.coeff(4) == l6);
  CHECK(v.coeff(6).is_zero());
  CHECK(v.apply(l4) == l6);
  CHECK(v.apply(l6).is_zero());
  CHECK(v.apply(l4 * l4) == l4 * l6 + l6 * l4);        // Leibniz on a square
  CHECK_THROWS_AS(v.add_term(3, l4), std::out_of_range);
  CHECK_THROWS_AS(v.add_term(8, l4), std::out_of_range);
  CHECK_THROWS_AS(v.add_term(4, LambdaPoly::one(3)), std::invalid_argument);

  // Adding the negation cancels the entry.
  LambdaVectorField w = v;
  w.add_term(4, -l6);
  CHECK(w.is_zero());
}

TEST_CASE("application is a derivation") {
  int n = 4;
  LambdaVectorField v = fld(n, 4, LambdaPoly::variable(n, 8)) +
                        fld(n, 6, LambdaPoly::one(n).scaled(Rational(3)));
  LambdaPoly p = LambdaPoly::variable(n, 4) * LambdaPoly::variable(n, 6);
  LambdaPoly q = LambdaPoly::variable(n, 6) + LambdaPoly::variable(n, 10);
  CHECK(v.apply(p * q) == v.apply(p) * q + p * v.apply(q));
  CHECK(v.apply(LambdaPoly::one(n)).is_zero());
}

TEST_CASE("bracket is a Lie bracket") {
  GenusContext ctx(2);
  auto L = [&](int k) { return heatalg::build_L(ctx, k); };
  auto br = LambdaVectorField::bracket;

  // Antisymmetry on the generated fields.
  CHECK(br(L(1), L(2)) == -br(L(2), L(1)));
  CHECK(br(L(0), L(0)).is_zero());

  // Jacobi identity.
  LambdaVectorField j = br(L(0), br(L(1), L(2))) + br(L(1), br(L(2), L(0))) +
                        br(L(2), br(L(0), L(1)));
  CHECK(j.is_zero());
}

TEST_CASE("application to operators and x polynomials") {
  GenusContext ctx(1);
  LambdaVectorField L0 = heatalg::build_L(ctx, 0);
  // L0 acts coefficientwise on a Weyl operator.
  WeylOperator w = WeylOperator::d(1, 1).scaled(LambdaPoly::variable(2, 4));
  CHECK(L0.apply(w) == WeylOperator::d(1, 1).scaled(LambdaPoly::variable(2, 4).scaled(Rational(4))));
  // ... and on the curve polynomial, where it multiplies each lambda by its index.
  heatalg::XPoly f = heatalg::curve_poly(ctx);
  heatalg::XPoly lf = L0.apply(f);
  CHECK(lf.coeff(1) == LambdaPoly::variable(2, 4).scaled(Rational(4)));
  CHECK(lf.coeff(0) == LambdaPoly::variable(2, 6).scaled(Rational(6)));
  CHECK(lf.coeff(3).is_zero());
}

TEST_CASE("grading") {
  GenusContext ctx(2);
  for (int k = 0; k < 2 * ctx.g; ++k)
    CHECK(heatalg::build_L(ctx, k).is_homogeneous_of_weight(2 * k));
  CHECK(LambdaVectorField::zero(4).is_homogeneous());
  // weight_component picks out graded pieces.
  LambdaVectorField mix = heatalg::build_L(ctx, 0) + heatalg::build_L(ctx, 1);
  CHECK(mix.weight_component(0) == heatalg::build_L(ctx, 0));
  CHECK(mix.weight_component(2) == heatalg::build_L(ctx, 1));
}

TEST_CASE("schrodinger operators combine weight-consistently") {
  GenusContext ctx(1);
  auto qs = heatalg::build_q_family(ctx);
  SchrodingerOperator q0 = qs[0];
  SchrodingerOperator q2 = qs[1];
  CHECK(q0.weight == 0);
  CHECK(q2.weight == 2);
  CHECK(q0.is_homogeneous());
  CHECK(q2.is_homogeneous());
  CHECK_THROWS_AS(q0 + q2, std::invalid_argument);
  CHECK((q0 - q0).is_zero());
  CHECK(q0.scaled(Rational(3)).l == q0.l.scaled(Rational(3)));

  // Scaling by a homogeneous polynomial shifts the weight label.
  SchrodingerOperator s = q0.scaled(LambdaPoly::variable(2, 4), 4);
  CHECK(s.weight == 4);
  CHECK_THROWS_AS(q0.scaled(LambdaPoly::variable(2, 4) + LambdaPoly::one(2), 4),
                  std::invalid_argument);
}

TEST_CASE("q commutators at genus 1") {
  GenusContext ctx(1);
  auto qs = heatalg::build_q_family(ctx);
  SchrodingerOperator q0 = qs[0];
  SchrodingerOperator q2 = qs[1];
  // [Q_0, Q_2] = 2 Q_2: the Euler relation holds as an exact operator identity.
  CHECK(heatalg::q_commutator(q0, q2) == q2.scaled(Rational(2)));
  // Antisymmetry of the full operator bracket.
  SchrodingerOperator ab = heatalg::q_commutator(q0, q2);
  SchrodingerOperator ba = heatalg::q_commutator(q2, q0);
  CHECK(ab == -ba);
}

TEST_CASE("q commutators at genus 2") {
  GenusContext ctx(2);
  auto qs = heatalg::build_q_family(ctx);
  auto q = [&](int k) { return qs[k]; };
  // [Q_2, Q_4] = 2 Q_6 + 8/5 (l6 Q_0 - l4 Q_2), checked with both Weyl parts.
  SchrodingerOperator lhs = heatalg::q_commutator(q(1), q(2));
  LambdaPoly l4 = LambdaPoly::variable(4, 4), l6 = LambdaPoly::variable(4, 6);
  SchrodingerOperator rhs = q(3).scaled(Rational(2)) +
                            q(0).scaled(l6.scaled(Rational(8, 5)), 6) -
                            q(1).scaled(l4.scaled(Rational(8, 5)), 4);
  CHECK(lhs.weight == 6);
  CHECK(lhs == rhs);
}

}  // TEST_SUITE

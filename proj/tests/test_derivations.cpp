#include "doctest.h"

#include <stdexcept>

#include "heatalg/context.hpp"
#include "heatalg/derivations.hpp"
#include "heatalg/generators.hpp"
#include "heatalg/text.hpp"

using heatalg::GenusContext;
using heatalg::LambdaPoly;
using heatalg::PsiPoly;
using heatalg::Rational;

TEST_SUITE("derivations") {

TEST_CASE("psi polynomial arithmetic") {
  PsiPoly p1 = PsiPoly::psi(1, {1});
  PsiPoly z1 = PsiPoly::z_var(1, 1);
  CHECK(heatalg::render(p1) == "psi1");
  CHECK(heatalg::render(p1 * p1) == "psi1^2");
  CHECK(heatalg::render(z1 * p1 - PsiPoly::constant(1, LambdaPoly::one(2))) ==
        "z1 psi1 - 1");
  CHECK((p1 - p1).is_zero());
  CHECK(p1.is_homogeneous_of_weight(1));
  CHECK(z1.is_homogeneous_of_weight(-1));
  CHECK(PsiPoly::psi(2, {1, 3}).is_homogeneous_of_weight(4));
  CHECK((p1 * p1).has_psi_products());
  CHECK_FALSE((z1 * p1).has_psi_products());
  // Index sets are canonicalized, so the spelling order is immaterial.
  CHECK(PsiPoly::psi(2, {3, 1}) == PsiPoly::psi(2, {1, 3}));
  CHECK_THROWS_AS(PsiPoly::psi(1, {}), std::invalid_argument);
  CHECK_THROWS_AS(PsiPoly::psi(1, {2}), std::invalid_argument);
  CHECK_THROWS_AS(PsiPoly::psi(1, {1}) + PsiPoly::psi(2, {1}), std::invalid_argument);
}

TEST_CASE("derivative sign rules") {
  // d_j psi_a = -psi_{aj}; d_j psi_I = +psi_{I j} once |I| >= 2.
  PsiPoly p1 = PsiPoly::psi(1, {1});
  CHECK(heatalg::psi_derivative(p1, 1) == -PsiPoly::psi(1, {1, 1}));
  PsiPoly p11 = PsiPoly::psi(1, {1, 1});
  CHECK(heatalg::psi_derivative(p11, 1) == PsiPoly::psi(1, {1, 1, 1}));
  // z factors differentiate as usual, by the product rule.
  PsiPoly z1 = PsiPoly::z_var(1, 1);
  PsiPoly p = z1 * z1 * p1;
  PsiPoly expect = z1.scaled(Rational(2)) * p1 - z1 * z1 * p11;
  CHECK(heatalg::psi_derivative(p, 1) == expect);
  // Mixed index: d_3 psi_1 = -psi_13.
  CHECK(heatalg::psi_derivative(PsiPoly::psi(2, {1}), 3) == -PsiPoly::psi(2, {1, 3}));
  CHECK_THROWS_AS(heatalg::psi_derivative(p1, 2), std::invalid_argument);
}

TEST_CASE("logarithmic heat right-hand sides, genus 1") {
  GenusContext ctx(1);
  auto fam = heatalg::h_family_generating(ctx);
  CHECK(heatalg::render(heatalg::heat_log_rhs(ctx, fam.h[0])) == "z1 psi1 - 1");
  CHECK(heatalg::render(heatalg::heat_log_rhs(ctx, fam.h[1])) ==
        "1/2 psi1^2 - 1/2 psi11 - 1/6 l4 z1^2");
}

TEST_CASE("burgers right-hand sides, genus 1") {
  GenusContext ctx(1);
  auto fam = heatalg::h_family_generating(ctx);
  CHECK(heatalg::render(heatalg::compute_w(ctx, 0, 1, fam.h[0])) == "psi1");
  CHECK(heatalg::render(heatalg::compute_w(ctx, 1, 1, fam.h[1])) ==
        "-1/2 psi111 - 1/3 l4 z1");
  CHECK_THROWS_AS(heatalg::compute_w(ctx, 0, 2, fam.h[0]), std::invalid_argument);
}

TEST_CASE("defining action agrees with the closed form") {
  for (int g = 1; g <= 3; ++g) {
    GenusContext ctx(g);
    auto fam = heatalg::h_family_generating(ctx);
    for (int k = 0; k <= 2 * g - 1; ++k)
      for (int j = 1; j <= 2 * g - 1; j += 2) {
        PsiPoly w = heatalg::compute_w(ctx, k, j, fam.h[k]);
        CHECK(w == heatalg::compute_w_closed(ctx, k, j, fam.h[k]));
        // Free of psi products, homogeneous of weight 2k + j.
        CHECK_FALSE(w.has_psi_products());
        CHECK(w.is_homogeneous_of_weight(2 * k + j));
      }
  }
}

TEST_CASE("burgers right-hand sides, genus 4 spot checks") {
  GenusContext ctx(4);
  auto fam = heatalg::h_family_generating(ctx);
  CHECK(heatalg::render(heatalg::compute_w(ctx, 1, 1, fam.h[1])) ==
        "-1/2 psi111 + psi3 - 7/9 l4 z1");
  // The z7 column of w_{8,5} carries 3 l4 l16, matching the symmetric gamma
  // entry of H_8.
  std::string w85 = heatalg::render(heatalg::compute_w(ctx, 4, 5, fam.h[4]));
  CHECK(w85.find("3 l4 l16 z7") != std::string::npos);
  CHECK(w85.find("6 l4 l16") == std::string::npos);
}

TEST_CASE("derivation operators") {
  GenusContext ctx(1);
  auto fam = heatalg::h_family_generating(ctx);
  heatalg::DerivationOperator d0 = heatalg::build_script_l(ctx, 0, fam.h[0]);
  heatalg::DerivationOperator d2 = heatalg::build_script_l(ctx, 1, fam.h[1]);
  CHECK(heatalg::render(d0) == "L0 - z1 d1");
  CHECK(heatalg::render(d2) == "L2 - psi1 d1");
  CHECK(d0.l == heatalg::build_L(ctx, 0));
  // psi_a d_b coefficients are minus the alpha matrix.
  REQUIRE(d2.psi_d.size() == 1);
  CHECK(d2.psi_d.at({1, 1}) == Rational(-1));

  // Round trip through the text form.
  CHECK(heatalg::parse_script_l(heatalg::render(d0), ctx) == d0);
  CHECK(heatalg::parse_script_l(heatalg::render(d2), ctx) == d2);
  CHECK_THROWS_AS(heatalg::parse_script_l("z1 d1", ctx), std::invalid_argument);
  CHECK_THROWS_AS(heatalg::parse_script_l("L0 + L2", ctx), std::invalid_argument);
  CHECK_THROWS_AS(heatalg::parse_script_l("2 L0", ctx), std::invalid_argument);
  CHECK_THROWS_AS(heatalg::parse_script_l("L0 - psi1^2 d1", ctx), std::invalid_argument);
}

TEST_CASE("derivation operators, genus 2 round trip") {
  GenusContext ctx(2);
  auto fam = heatalg::h_family_generating(ctx);
  for (int k = 0; k <= 3; ++k) {
    heatalg::DerivationOperator d = heatalg::build_script_l(ctx, k, fam.h[k]);
    CHECK(heatalg::parse_script_l(heatalg::render(d), ctx) == d);
  }
}

}  // TEST_SUITE

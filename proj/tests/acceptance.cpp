// Acceptance gate: one pass/fail line per criterion, exit 0 only if all pass.
// Time budgets are part of each criterion's pass condition.

#include <chrono>
#include <exception>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "heatalg/context.hpp"
#include "heatalg/derivations.hpp"
#include "heatalg/generators.hpp"
#include "heatalg/json_io.hpp"
#include "heatalg/lie_verify.hpp"
#include "heatalg/schrodinger.hpp"
#include "heatalg/text.hpp"

using namespace heatalg;

namespace {

std::string g_fixtures = "fixtures";
std::map<int, HFamily> g_fams;

const HFamily& fam_of(int g) {
  auto it = g_fams.find(g);
  if (it == g_fams.end()) it = g_fams.emplace(g, h_family_generating(GenusContext(g))).first;
  return it->second;
}

int count_status(const std::vector<CheckRecord>& recs, const std::string& st) {
  int n = 0;
  for (const auto& r : recs)
    if (r.status == st) ++n;
  return n;
}

bool none_fail(const std::vector<CheckRecord>& recs) {
  for (const auto& r : recs)
    if (!r.ok()) return false;
  return true;
}

using Body = std::function<std::pair<bool, std::string>()>;

bool run_criterion(int n, const std::string& name, double budget, const Body& body) {
  auto t0 = std::chrono::steady_clock::now();
  bool pass = false;
  std::string detail;
  try {
    auto [p, d] = body();
    pass = p;
    detail = d;
  } catch (const std::exception& e) {
    pass = false;
    detail = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget > 0 && secs >= budget) {
    pass = false;
    if (!detail.empty()) detail += "; ";
    detail += "exceeded the " + std::to_string(static_cast<int>(budget)) + "s budget";
  }
  std::ostringstream line;
  line << (pass ? "PASS" : "FAIL") << " criterion-" << n << " " << name << " (" << std::fixed
       << std::setprecision(2) << secs << "s)";
  if (!detail.empty()) line << ": " << detail;
  std::cout << line.str() << "\n";
  return pass;
}

std::pair<bool, std::string> golden_h_tables() {
  int exact = 0, total = 0;
  bool ok = true;
  for (int g = 1; g <= 4; ++g) {
    GenusContext ctx(g);
    FixtureSet fx = load_fixtures(g_fixtures, g);
    auto recs = golden_compare_h(ctx, fx, fam_of(g));
    total += static_cast<int>(recs.size());
    exact += count_status(recs, "exact");
    ok = ok && none_fail(recs);
  }
  std::ostringstream d;
  d << exact << " of " << total << " printed operators match exactly";
  return {ok && exact == total, d.str()};
}

std::pair<bool, std::string> dual_construction() {
  int matched = 0, total = 0;
  for (int g = 1; g <= 8; ++g) {
    GenusContext ctx(g);
    const HFamily& gen = fam_of(g);
    HFamily rec = h_family_recurrence(ctx);
    for (int k = 0; k < 2 * g; ++k) {
      ++total;
      if (gen.h.at(k) == rec.h.at(k)) ++matched;
    }
  }
  std::ostringstream d;
  d << matched << " of " << total
    << " operators agree between the generating-function and recurrence constructions";
  return {matched == total, d.str()};
}

std::pair<bool, std::string> lie_algebra_relations() {
  int n = 0;
  bool ok = true;
  for (int g = 1; g <= 6; ++g) {
    GenusContext ctx(g);
    auto e = check_euler(ctx);
    auto l = check_lemma33(ctx);
    n += static_cast<int>(e.size() + l.size());
    ok = ok && none_fail(e) && none_fail(l);
  }
  std::ostringstream d;
  d << n << " euler and bracket-ladder identities hold exactly";
  return {ok, d.str()};
}

std::pair<bool, std::string> q_structure() {
  int n = 0;
  bool ok = true;
  for (int g = 1; g <= 4; ++g) {
    GenusContext ctx(g);
    const HFamily& fam = fam_of(g);
    std::vector<SchrodingerOperator> q;
    for (int k = 0; k < 2 * g; ++k) q.push_back(build_Q(ctx, k, fam.h.at(k)));
    auto recs = check_q_structure(ctx, q);
    n += static_cast<int>(recs.size());
    ok = ok && none_fail(recs);
  }
  std::ostringstream d;
  d << n << " operator commutators expand exactly over the family, Weyl parts included";
  return {ok, d.str()};
}

std::pair<bool, std::string> operator_shapes() {
  int n = 0;
  bool ok = true;
  for (int g = 1; g <= 8; ++g) {
    GenusContext ctx(g);
    auto recs = check_shapes(ctx, fam_of(g));
    n += static_cast<int>(recs.size());
    ok = ok && none_fail(recs);
  }
  // Spot checks of the potential against its literal values.
  GenusContext g2(2), g3(3);
  ok = ok && alpha_delta(g2, 0).delta.constant_value() == Rational(-3);
  ok = ok && alpha_delta(g2, 1).delta.is_zero();
  ok = ok && render(alpha_delta(g2, 2).delta) == "-l4";
  ok = ok && render(alpha_delta(g3, 3).delta) == "-2*l6";
  std::ostringstream d;
  d << n << " shape checks pass; potential spot values confirmed";
  return {ok, d.str()};
}

std::pair<bool, std::string> weight_homogeneity() {
  int n = 0;
  bool ok = true;
  for (int g = 1; g <= 4; ++g) {
    GenusContext ctx(g);
    auto recs = check_grading(ctx, fam_of(g));
    n += static_cast<int>(recs.size());
    ok = ok && none_fail(recs);
  }
  std::ostringstream d;
  d << n << " generated objects are weight-homogeneous";
  return {ok, d.str()};
}

std::pair<bool, std::string> derivations_golden() {
  GenusContext ctx(4);
  FixtureSet fx = load_fixtures(g_fixtures, 4);
  const HFamily& fam = fam_of(4);

  auto sl = golden_compare_script_l(ctx, fx, fam);
  bool sl_exact = count_status(sl, "exact") == static_cast<int>(sl.size()) && sl.size() == 8;

  auto w = golden_compare_w(ctx, fx, fam);
  bool w_ok = none_fail(w);
  bool reported = false;
  for (const auto& r : w)
    if (r.check == "w-sign-question" && r.status == "reported") reported = true;
  int typos = count_status(w, "typo_candidate");

  // Every right-hand side is free of psi products at genus 1..4.
  bool product_free = true;
  for (int g = 1; g <= 4; ++g) {
    GenusContext c(g);
    const HFamily& f = fam_of(g);
    for (int k = 0; k < 2 * g; ++k)
      for (int j = 1; j <= 2 * g - 1; j += 2)
        product_free = product_free && !compute_w(c, k, j, f.h.at(k)).has_psi_products();
  }

  std::ostringstream d;
  d << "derivation operators verbatim; right-hand sides psi-product-free; " << typos
    << " typo candidates and the third-order sign question reported";
  return {sl_exact && w_ok && reported && typos == 4 && product_free, d.str()};
}

std::pair<bool, std::string> algebraic_properties() {
  const int g = 2, n = 4;
  std::mt19937 rng(20250816u);
  auto rnd_int = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  auto rnd_rat = [&] {
    int num = rnd_int(-4, 4);
    return Rational(num == 0 ? 1 : num, rnd_int(1, 3));
  };
  auto rnd_lambda = [&] {
    LambdaPoly p(n);
    int terms = rnd_int(1, 2);
    for (int t = 0; t < terms; ++t) {
      LambdaMono m(n, 0);
      m[rnd_int(0, n - 1)] = rnd_int(0, 1);
      p.add_term(m, rnd_rat());
    }
    return p;
  };
  auto rnd_weyl = [&] {
    WeylOperator w(g);
    int terms = rnd_int(1, 2);
    for (int t = 0; t < terms; ++t) {
      ZMono m(g);
      for (int p = 0; p < g; ++p) {
        m.z[p] = rnd_int(0, 1);
        m.d[p] = rnd_int(0, 1);
      }
      w.add_term(m, rnd_lambda());
    }
    return w;
  };
  auto rnd_field = [&] {
    LambdaVectorField v(n);
    int terms = rnd_int(1, 2);
    for (int t = 0; t < terms; ++t) v.add_term(2 * rnd_int(2, n + 1), rnd_lambda());
    return v;
  };

  for (int trial = 0; trial < 100; ++trial) {
    WeylOperator a = rnd_weyl(), b = rnd_weyl(), c = rnd_weyl();
    if ((a * b) * c != a * (b * c)) return {false, "associativity failed"};
    if (WeylOperator::commutator(a, b) != -WeylOperator::commutator(b, a))
      return {false, "commutator antisymmetry failed"};
    WeylOperator jac = WeylOperator::commutator(a, WeylOperator::commutator(b, c)) +
                       WeylOperator::commutator(b, WeylOperator::commutator(c, a)) +
                       WeylOperator::commutator(c, WeylOperator::commutator(a, b));
    if (!jac.is_zero()) return {false, "jacobi identity failed"};

    LambdaVectorField u = rnd_field(), v = rnd_field(), w = rnd_field();
    if (LambdaVectorField::bracket(u, v) != -LambdaVectorField::bracket(v, u))
      return {false, "field bracket antisymmetry failed"};
    LambdaVectorField fj =
        LambdaVectorField::bracket(u, LambdaVectorField::bracket(v, w)) +
        LambdaVectorField::bracket(v, LambdaVectorField::bracket(w, u)) +
        LambdaVectorField::bracket(w, LambdaVectorField::bracket(u, v));
    if (!fj.is_zero()) return {false, "field jacobi identity failed"};

    // Serialization round-trips, through both the text and the json form.
    if (parse_weyl(render(a), g) != a) return {false, "weyl text round-trip failed"};
    if (weyl_from_json(to_json(a)) != a) return {false, "weyl json round-trip failed"};
    if (vector_field_from_json(to_json(u)) != u)
      return {false, "field json round-trip failed"};
    if (!u.is_zero() && parse_vector_field(render(u), n) != u)
      return {false, "field text round-trip failed"};
  }

  // Constructed objects round-trip too.
  GenusContext ctx(g);
  const HFamily& fam = fam_of(g);
  for (int k = 0; k < 2 * g; ++k) {
    SchrodingerOperator q = build_Q(ctx, k, fam.h.at(k));
    if (schrodinger_from_json(to_json(q)) != q)
      return {false, "schrodinger json round-trip failed"};
    DerivationOperator D = build_script_l(ctx, k, fam.h.at(k));
    if (script_l_from_json(to_json(D, g)) != D)
      return {false, "derivation json round-trip failed"};
    if (parse_script_l(render(D), ctx) != D)
      return {false, "derivation text round-trip failed"};
    PsiPoly w = compute_w(ctx, k, 1, fam.h.at(k));
    if (psi_poly_from_json(to_json(w)) != w) return {false, "psi json round-trip failed"};
  }

  return {true, "100 random triples: associativity, antisymmetry, jacobi; round-trips hold"};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_fixtures = argv[1];
  int failures = 0;
  failures += !run_criterion(1, "golden-h-tables", 5, golden_h_tables);
  failures += !run_criterion(2, "dual-construction", 60, dual_construction);
  failures += !run_criterion(3, "lie-algebra-relations", 30, lie_algebra_relations);
  failures += !run_criterion(4, "q-structure", 120, q_structure);
  failures += !run_criterion(5, "operator-shapes", 0, operator_shapes);
  failures += !run_criterion(6, "weight-homogeneity", 0, weight_homogeneity);
  failures += !run_criterion(7, "derivations-golden", 30, derivations_golden);
  failures += !run_criterion(8, "algebraic-properties", 0, algebraic_properties);
  return failures == 0 ? 0 : 1;
}

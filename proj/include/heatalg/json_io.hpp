#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include "json.hpp"

#include "heatalg/derivations.hpp"
#include "heatalg/schrodinger.hpp"
#include "heatalg/text.hpp"

// JSON serialization. Every polynomial-like object flattens to a uniform
// term list
//   {"exps": {"<atom>": e, ...}, "coef": "p/q"}
// with atom names from the shared text grammar (psi atoms always in brace
// form), wrapped in a kind-tagged object carrying the arity fields needed to
// reconstruct it. Deserialization goes back through the same staging
// polynomial as the text parser, so the two front ends validate identically.

namespace heatalg {

namespace detail {

inline void add_lambda_exps(GenMono& m, const LambdaMono& mono) {
  for (std::size_t p = 0; p < mono.size(); ++p)
    if (mono[p] > 0) m[GenAtom{AtomKind::lambda, static_cast<int>(2 * p + 4), {}}] = mono[p];
}

}  // namespace detail

inline GeneralPoly to_general(const LambdaPoly& p) {
  GeneralPoly g;
  for (const auto& [mono, c] : p.terms()) {
    GenMono m;
    detail::add_lambda_exps(m, mono);
    g.add_term(m, c);
  }
  return g;
}

inline GeneralPoly to_general(const XPoly& p) {
  GeneralPoly g;
  for (int i = 0; i <= p.degree(); ++i) {
    for (const auto& [mono, c] : p.coeff(i).terms()) {
      GenMono m;
      if (i > 0) m[GenAtom{AtomKind::x, 0, {}}] = i;
      detail::add_lambda_exps(m, mono);
      g.add_term(m, c);
    }
  }
  return g;
}

inline GeneralPoly to_general(const WeylOperator& w) {
  GeneralPoly g;
  for (const auto& [zm, coef] : w.terms()) {
    for (const auto& [mono, c] : coef.terms()) {
      GenMono m;
      detail::add_lambda_exps(m, mono);
      for (std::size_t p = 0; p < zm.z.size(); ++p)
        if (zm.z[p] > 0) m[GenAtom{AtomKind::z, static_cast<int>(2 * p + 1), {}}] = zm.z[p];
      for (std::size_t p = 0; p < zm.d.size(); ++p)
        if (zm.d[p] > 0) m[GenAtom{AtomKind::d, static_cast<int>(2 * p + 1), {}}] = zm.d[p];
      g.add_term(m, c);
    }
  }
  return g;
}

inline GeneralPoly to_general(const LambdaVectorField& v) {
  GeneralPoly g;
  for (const auto& [idx, coef] : v.terms()) {
    for (const auto& [mono, c] : coef.terms()) {
      GenMono m;
      detail::add_lambda_exps(m, mono);
      m[GenAtom{AtomKind::dlambda, idx, {}}] = 1;
      g.add_term(m, c);
    }
  }
  return g;
}

inline GeneralPoly to_general(const PsiPoly& p) {
  GeneralPoly g;
  for (const auto& [pm, coef] : p.terms()) {
    for (const auto& [mono, c] : coef.terms()) {
      GenMono m;
      detail::add_lambda_exps(m, mono);
      for (std::size_t q = 0; q < pm.z.size(); ++q)
        if (pm.z[q] > 0) m[GenAtom{AtomKind::z, static_cast<int>(2 * q + 1), {}}] = pm.z[q];
      for (const auto& [key, e] : pm.psi) m[GenAtom{AtomKind::psi, 0, key}] = e;
      g.add_term(m, c);
    }
  }
  return g;
}

inline GeneralPoly to_general(const DerivationOperator& D) {
  GeneralPoly g = to_general(D.zd);
  GenMono head;
  head[GenAtom{AtomKind::op_l, 2 * D.k, {}}] = 1;
  g.add_term(head, Rational(1));
  for (const auto& [ab, c] : D.psi_d) {
    GenMono m;
    m[GenAtom{AtomKind::psi, 0, {ab.first}}] = 1;
    m[GenAtom{AtomKind::d, ab.second, {}}] = 1;
    g.add_term(m, c);
  }
  return g;
}

inline nlohmann::json json_terms(const GeneralPoly& p) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [mono, c] : p.terms()) {
    nlohmann::json exps = nlohmann::json::object();
    for (const auto& [atom, e] : mono) exps[atom_name(atom)] = e;
    arr.push_back({{"exps", std::move(exps)}, {"coef", c.str()}});
  }
  return arr;
}

inline GeneralPoly general_from_json_terms(const nlohmann::json& arr) {
  if (!arr.is_array()) throw std::invalid_argument("json terms: expected an array");
  GeneralPoly g;
  for (const auto& item : arr) {
    if (!item.is_object() || !item.contains("exps") || !item.contains("coef"))
      throw std::invalid_argument("json terms: each term needs 'exps' and 'coef'");
    GenMono m;
    for (const auto& [name, e] : item.at("exps").items()) {
      int exp = e.get<int>();
      if (exp <= 0) throw std::invalid_argument("json terms: exponents must be positive");
      m[parse_atom_name(name)] += exp;
    }
    g.add_term(m, Rational::parse(item.at("coef").get<std::string>()));
  }
  return g;
}

// --- kind-tagged wrappers ---------------------------------------------------

inline nlohmann::json to_json(const LambdaPoly& p) {
  return {{"kind", "lambda-poly"}, {"nlambda", p.nlambda()}, {"terms", json_terms(to_general(p))}};
}

inline nlohmann::json to_json(const XPoly& p, int nlambda) {
  return {{"kind", "x-poly"}, {"nlambda", nlambda}, {"terms", json_terms(to_general(p))}};
}

inline nlohmann::json to_json(const WeylOperator& w) {
  return {{"kind", "weyl"}, {"genus", w.genus()}, {"terms", json_terms(to_general(w))}};
}

inline nlohmann::json to_json(const LambdaVectorField& v) {
  return {{"kind", "vector-field"},
          {"nlambda", v.nlambda()},
          {"terms", json_terms(to_general(v))}};
}

inline nlohmann::json to_json(const SchrodingerOperator& q) {
  return {{"kind", "schrodinger"},
          {"genus", q.h.genus()},
          {"weight", q.weight},
          {"l", to_json(q.l)},
          {"h", to_json(q.h)}};
}

inline nlohmann::json to_json(const PsiPoly& p) {
  return {{"kind", "psi-poly"}, {"genus", p.genus()}, {"terms", json_terms(to_general(p))}};
}

inline nlohmann::json to_json(const DerivationOperator& D, int genus) {
  return {{"kind", "script-l"},
          {"genus", genus},
          {"k", D.k},
          {"terms", json_terms(to_general(D))}};
}

namespace detail {

inline void expect_kind(const nlohmann::json& j, const char* kind) {
  if (!j.is_object() || !j.contains("kind") || j.at("kind").get<std::string>() != kind)
    throw std::invalid_argument(std::string("json: expected kind '") + kind + "'");
}

}  // namespace detail

inline LambdaPoly lambda_poly_from_json(const nlohmann::json& j) {
  detail::expect_kind(j, "lambda-poly");
  return to_lambda_poly(general_from_json_terms(j.at("terms")), j.at("nlambda").get<int>());
}

inline XPoly xpoly_from_json(const nlohmann::json& j) {
  detail::expect_kind(j, "x-poly");
  return to_xpoly(general_from_json_terms(j.at("terms")), j.at("nlambda").get<int>());
}

inline WeylOperator weyl_from_json(const nlohmann::json& j) {
  detail::expect_kind(j, "weyl");
  return to_weyl(general_from_json_terms(j.at("terms")), j.at("genus").get<int>());
}

inline LambdaVectorField vector_field_from_json(const nlohmann::json& j) {
  detail::expect_kind(j, "vector-field");
  return to_vector_field(general_from_json_terms(j.at("terms")), j.at("nlambda").get<int>());
}

inline SchrodingerOperator schrodinger_from_json(const nlohmann::json& j) {
  detail::expect_kind(j, "schrodinger");
  SchrodingerOperator q{j.at("weight").get<int>(), vector_field_from_json(j.at("l")),
                        weyl_from_json(j.at("h"))};
  int genus = j.at("genus").get<int>();
  if (q.h.genus() != genus || q.l.nlambda() != 2 * genus)
    throw std::invalid_argument("json: schrodinger genus fields disagree");
  return q;
}

inline PsiPoly psi_poly_from_json(const nlohmann::json& j) {
  detail::expect_kind(j, "psi-poly");
  return to_psi_poly(general_from_json_terms(j.at("terms")), j.at("genus").get<int>());
}

inline DerivationOperator script_l_from_json(const nlohmann::json& j) {
  detail::expect_kind(j, "script-l");
  GenusContext ctx{j.at("genus").get<int>()};
  DerivationOperator D = to_script_l(general_from_json_terms(j.at("terms")), ctx);
  if (D.k != j.at("k").get<int>())
    throw std::invalid_argument("json: script-l index field disagrees with the L symbol");
  return D;
}

}  // namespace heatalg

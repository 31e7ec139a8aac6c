#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "heatalg/lambda_poly.hpp"
#include "heatalg/rational.hpp"
#include "heatalg/vector_field.hpp"
#include "heatalg/weyl.hpp"
#include "heatalg/xpoly.hpp"

namespace heatalg {

// ---------------------------------------------------------------------------
// Shared text grammar
//
//   expr     := ['+'|'-'] term { ('+'|'-') term }
//   term     := factor { ['*'] factor }            (juxtaposition multiplies)
//   factor   := primary ['^' integer]
//   primary  := rational | atom | '(' expr ')'
//   rational := digits ['/' digits]
//   atom     := 'x' | 'l'N | 'z'N | 'd'N | 'dl'N | 'L'N
//             | 'psi' digits | 'psi{' N {',' N} '}'
//
// Everything parses into a commutative intermediate (GeneralPoly) and is then
// converted to a concrete algebraic type, which validates the variable set.
// A z/d monomial in text always denotes the normal-ordered operator whatever
// the written factor order; "psi13" carries one index per digit, the brace
// form "psi{1,13}" arbitrary indices. 'l4' is the ring variable lambda_4,
// 'dl4' the vector-field direction d/d lambda_4, 'L4' the symbol L_4 itself
// (used by derivation-operator displays).
// ---------------------------------------------------------------------------

enum class AtomKind { x = 0, lambda = 1, z = 2, psi = 3, d = 4, dlambda = 5, op_l = 6 };

struct GenAtom {
  AtomKind kind = AtomKind::x;
  int index = 0;         // lambda/z/d/dlambda/op_l flavors
  std::vector<int> psi;  // psi flavor: sorted multiset of z-indices

  friend bool operator==(const GenAtom& a, const GenAtom& b) {
    return a.kind == b.kind && a.index == b.index && a.psi == b.psi;
  }
  friend bool operator!=(const GenAtom& a, const GenAtom& b) { return !(a == b); }
  friend bool operator<(const GenAtom& a, const GenAtom& b) {
    if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind);
    if (a.index != b.index) return a.index < b.index;
    return a.psi < b.psi;
  }
};

inline std::string atom_name(const GenAtom& a, bool psi_braces = true) {
  switch (a.kind) {
    case AtomKind::x: return "x";
    case AtomKind::lambda: return "l" + std::to_string(a.index);
    case AtomKind::z: return "z" + std::to_string(a.index);
    case AtomKind::d: return "d" + std::to_string(a.index);
    case AtomKind::dlambda: return "dl" + std::to_string(a.index);
    case AtomKind::op_l: return "L" + std::to_string(a.index);
    case AtomKind::psi: {
      bool compact = !psi_braces;
      for (int i : a.psi)
        if (i > 9) compact = false;
      std::string s = "psi";
      if (compact) {
        for (int i : a.psi) s += std::to_string(i);
        return s;
      }
      s += "{";
      for (std::size_t i = 0; i < a.psi.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(a.psi[i]);
      }
      return s + "}";
    }
  }
  return "?";
}

using GenMono = std::map<GenAtom, int>;

struct GenMonoLess {
  bool operator()(const GenMono& a, const GenMono& b) const {
    auto ia = a.begin(), ib = b.begin();
    for (; ia != a.end() && ib != b.end(); ++ia, ++ib) {
      if (ia->first < ib->first) return true;
      if (ib->first < ia->first) return false;
      if (ia->second != ib->second) return ia->second < ib->second;
    }
    return ia == a.end() && ib != b.end();
  }
};

// Commutative staging polynomial between text/JSON and the typed operators.
class GeneralPoly {
 public:
  using TermMap = std::map<GenMono, Rational, GenMonoLess>;

  static GeneralPoly zero() { return {}; }
  static GeneralPoly constant(const Rational& c) {
    GeneralPoly p;
    p.add_term({}, c);
    return p;
  }
  static GeneralPoly atom(const GenAtom& a) {
    GeneralPoly p;
    GenMono m;
    m[a] = 1;
    p.add_term(m, Rational(1));
    return p;
  }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const GenMono& m, const Rational& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  GeneralPoly& operator+=(const GeneralPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  GeneralPoly& operator-=(const GeneralPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend GeneralPoly operator+(GeneralPoly a, const GeneralPoly& b) { return a += b; }
  friend GeneralPoly operator-(GeneralPoly a, const GeneralPoly& b) { return a -= b; }
  GeneralPoly operator-() const {
    GeneralPoly r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
  }

  friend GeneralPoly operator*(const GeneralPoly& a, const GeneralPoly& b) {
    GeneralPoly r;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        GenMono m = ma;
        for (const auto& [atom, e] : mb) m[atom] += e;
        r.add_term(m, ca * cb);
      }
    return r;
  }

  GeneralPoly pow(int e) const {
    if (e < 0) throw std::invalid_argument("GeneralPoly: negative exponent");
    GeneralPoly r = constant(Rational(1));
    for (int i = 0; i < e; ++i) r = r * *this;
    return r;
  }

 private:
  TermMap terms_;
};

namespace detail {

struct Token {
  enum Type { number, atom, plus, minus, star, caret, lparen, rparen, end } type;
  Rational value{0};
  GenAtom sym;
  std::size_t offset = 0;
};

[[noreturn]] inline void parse_fail(std::size_t offset, const std::string& msg) {
  throw std::invalid_argument("text parse error at offset " + std::to_string(offset) + ": " + msg);
}

inline std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto digits = [&](const char* what) {
    std::size_t b = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == b) parse_fail(b, std::string("expected ") + what);
    return s.substr(b, i - b);
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t at = i;
    if (c == '+' || c == '-' || c == '*' || c == '^' || c == '(' || c == ')') {
      Token t;
      t.offset = at;
      t.type = c == '+'   ? Token::plus
               : c == '-' ? Token::minus
               : c == '*' ? Token::star
               : c == '^' ? Token::caret
               : c == '(' ? Token::lparen
                          : Token::rparen;
      out.push_back(t);
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = digits("digits");
      if (i + 1 < s.size() && s[i] == '/' && std::isdigit(static_cast<unsigned char>(s[i + 1]))) {
        ++i;
        num += "/" + digits("denominator digits");
      }
      Token t;
      t.offset = at;
      t.type = Token::number;
      t.value = Rational::parse(num);
      out.push_back(t);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t b = i;
      while (i < s.size() && std::isalpha(static_cast<unsigned char>(s[i]))) ++i;
      std::string name = s.substr(b, i - b);
      Token t;
      t.offset = at;
      t.type = Token::atom;
      if (name == "x") {
        if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
          parse_fail(i, "'x' takes no index");
        t.sym.kind = AtomKind::x;
      } else if (name == "psi") {
        t.sym.kind = AtomKind::psi;
        if (i < s.size() && s[i] == '{') {
          ++i;
          while (true) {
            t.sym.psi.push_back(std::stoi(digits("psi index")));
            if (i < s.size() && s[i] == ',') {
              ++i;
              continue;
            }
            if (i < s.size() && s[i] == '}') {
              ++i;
              break;
            }
            parse_fail(i, "expected ',' or '}' in psi index list");
          }
        } else {
          std::string run = digits("psi indices");
          for (char dch : run) {
            if (dch == '0') parse_fail(at, "psi index 0 is invalid");
            t.sym.psi.push_back(dch - '0');
          }
        }
        for (int idx : t.sym.psi)
          if (idx < 1) parse_fail(at, "psi indices must be positive");
        std::sort(t.sym.psi.begin(), t.sym.psi.end());
      } else if (name == "l" || name == "z" || name == "d" || name == "dl" || name == "L") {
        t.sym.kind = name == "l"    ? AtomKind::lambda
                     : name == "z"  ? AtomKind::z
                     : name == "d"  ? AtomKind::d
                     : name == "dl" ? AtomKind::dlambda
                                    : AtomKind::op_l;
        t.sym.index = std::stoi(digits("index"));
      } else {
        parse_fail(b, "unknown symbol '" + name + "'");
      }
      out.push_back(t);
      continue;
    }
    parse_fail(i, std::string("unexpected character '") + c + "'");
  }
  Token t;
  t.offset = s.size();
  t.type = Token::end;
  out.push_back(t);
  return out;
}

class ExprParser {
 public:
  explicit ExprParser(const std::string& s) : toks_(tokenize(s)) {}

  GeneralPoly run() {
    GeneralPoly p = parse_expr();
    if (cur().type != Token::end) parse_fail(cur().offset, "trailing input");
    return p;
  }

 private:
  const Token& cur() const { return toks_[i_]; }
  void advance() { ++i_; }

  static bool starts_factor(const Token& t) {
    return t.type == Token::number || t.type == Token::atom || t.type == Token::lparen;
  }

  GeneralPoly parse_expr() {
    GeneralPoly r = parse_term();
    while (cur().type == Token::plus || cur().type == Token::minus) {
      bool minus = cur().type == Token::minus;
      advance();
      GeneralPoly t = parse_term();
      if (minus)
        r -= t;
      else
        r += t;
    }
    return r;
  }

  GeneralPoly parse_term() {
    int sign = 1;
    while (cur().type == Token::plus || cur().type == Token::minus) {
      if (cur().type == Token::minus) sign = -sign;
      advance();
    }
    GeneralPoly f = parse_factor();
    while (true) {
      if (cur().type == Token::star) {
        advance();
        f = f * parse_factor();
      } else if (starts_factor(cur())) {
        f = f * parse_factor();
      } else {
        break;
      }
    }
    return sign < 0 ? -f : f;
  }

  GeneralPoly parse_factor() {
    GeneralPoly p = parse_primary();
    if (cur().type == Token::caret) {
      advance();
      if (cur().type != Token::number || !cur().value.is_integer())
        parse_fail(cur().offset, "exponent must be a nonnegative integer");
      long e = cur().value.to_long();
      if (e > 64) parse_fail(cur().offset, "exponent too large");
      advance();
      p = p.pow(static_cast<int>(e));
    }
    return p;
  }

  GeneralPoly parse_primary() {
    const Token& t = cur();
    switch (t.type) {
      case Token::number: {
        GeneralPoly p = GeneralPoly::constant(t.value);
        advance();
        return p;
      }
      case Token::atom: {
        GeneralPoly p = GeneralPoly::atom(t.sym);
        advance();
        return p;
      }
      case Token::lparen: {
        advance();
        GeneralPoly p = parse_expr();
        if (cur().type != Token::rparen) parse_fail(cur().offset, "expected ')'");
        advance();
        return p;
      }
      default:
        parse_fail(t.offset, "expected a number, symbol, or '('");
    }
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

}  // namespace detail

inline GeneralPoly parse_general(const std::string& s) { return detail::ExprParser(s).run(); }

// Parses a string that must consist of exactly one atom (JSON exponent keys).
inline GenAtom parse_atom_name(const std::string& s) {
  auto toks = detail::tokenize(s);
  if (toks.size() != 2 || toks[0].type != detail::Token::atom)
    throw std::invalid_argument("expected a single symbol, got '" + s + "'");
  return toks[0].sym;
}

// ---------------------------------------------------------------------------
// GeneralPoly -> typed conversions. Each rejects atoms foreign to the target
// with a message naming the offending symbol.
// ---------------------------------------------------------------------------

namespace detail {

[[noreturn]] inline void bad_atom(const char* target, const GenAtom& a) {
  throw std::invalid_argument(std::string(target) + ": unexpected symbol '" + atom_name(a) + "'");
}

inline int lambda_pos_checked(int nlambda, int index, const char* target) {
  if (index < 4 || index > 2 * nlambda + 2 || index % 2 != 0)
    throw std::invalid_argument(std::string(target) + ": lambda index " + std::to_string(index) +
                                " outside {4,6,...," + std::to_string(2 * nlambda + 2) + "}");
  return (index - 4) / 2;
}

inline int z_pos_checked(int g, int index, const char* target) {
  if (index < 1 || index > 2 * g - 1 || index % 2 == 0)
    throw std::invalid_argument(std::string(target) + ": z index " + std::to_string(index) +
                                " outside {1,3,...," + std::to_string(2 * g - 1) + "}");
  return (index - 1) / 2;
}

}  // namespace detail

inline LambdaPoly to_lambda_poly(const GeneralPoly& p, int nlambda) {
  LambdaPoly out(nlambda);
  for (const auto& [mono, c] : p.terms()) {
    LambdaMono lm(nlambda, 0);
    for (const auto& [a, e] : mono) {
      if (a.kind != AtomKind::lambda) detail::bad_atom("lambda polynomial", a);
      lm[detail::lambda_pos_checked(nlambda, a.index, "lambda polynomial")] += e;
    }
    out.add_term(lm, c);
  }
  return out;
}

inline XPoly to_xpoly(const GeneralPoly& p, int nlambda) {
  std::map<int, LambdaPoly> by_deg;
  for (const auto& [mono, c] : p.terms()) {
    LambdaMono lm(nlambda, 0);
    int deg = 0;
    for (const auto& [a, e] : mono) {
      if (a.kind == AtomKind::x)
        deg += e;
      else if (a.kind == AtomKind::lambda)
        lm[detail::lambda_pos_checked(nlambda, a.index, "x-polynomial")] += e;
      else
        detail::bad_atom("x-polynomial", a);
    }
    auto it = by_deg.emplace(deg, LambdaPoly::zero(nlambda)).first;
    it->second.add_term(lm, c);
  }
  XPoly out = xpoly_zero(nlambda);
  for (const auto& [deg, coef] : by_deg) out.set_coeff(deg, coef);
  return out;
}

inline WeylOperator to_weyl(const GeneralPoly& p, int genus) {
  WeylOperator out(genus);
  const int n = 2 * genus;
  for (const auto& [mono, c] : p.terms()) {
    LambdaMono lm(n, 0);
    ZMono zm(genus);
    for (const auto& [a, e] : mono) {
      switch (a.kind) {
        case AtomKind::lambda:
          lm[detail::lambda_pos_checked(n, a.index, "Weyl operator")] += e;
          break;
        case AtomKind::z:
          zm.z[detail::z_pos_checked(genus, a.index, "Weyl operator")] += e;
          break;
        case AtomKind::d:
          zm.d[detail::z_pos_checked(genus, a.index, "Weyl operator")] += e;
          break;
        default:
          detail::bad_atom("Weyl operator", a);
      }
    }
    LambdaPoly coef(n);
    coef.add_term(lm, c);
    out.add_term(zm, coef);
  }
  return out;
}

inline LambdaVectorField to_vector_field(const GeneralPoly& p, int nlambda) {
  LambdaVectorField out(nlambda);
  for (const auto& [mono, c] : p.terms()) {
    LambdaMono lm(nlambda, 0);
    int target = 0, ntargets = 0;
    for (const auto& [a, e] : mono) {
      if (a.kind == AtomKind::dlambda) {
        if (e != 1 || ++ntargets > 1)
          throw std::invalid_argument(
              "vector field: each term needs exactly one first-order dl factor");
        target = a.index;
      } else if (a.kind == AtomKind::lambda) {
        lm[detail::lambda_pos_checked(nlambda, a.index, "vector field")] += e;
      } else {
        detail::bad_atom("vector field", a);
      }
    }
    if (ntargets == 0)
      throw std::invalid_argument("vector field: term without a dl factor");
    LambdaPoly coef(nlambda);
    coef.add_term(lm, c);
    out.add_term(target, coef);
  }
  return out;
}

inline LambdaPoly parse_lambda_poly(const std::string& s, int nlambda) {
  return to_lambda_poly(parse_general(s), nlambda);
}
inline XPoly parse_xpoly(const std::string& s, int nlambda) {
  return to_xpoly(parse_general(s), nlambda);
}
inline WeylOperator parse_weyl(const std::string& s, int genus) {
  return to_weyl(parse_general(s), genus);
}
inline LambdaVectorField parse_vector_field(const std::string& s, int nlambda) {
  return to_vector_field(parse_general(s), nlambda);
}

// ---------------------------------------------------------------------------
// Canonical rendering. Standalone lambda polynomials use '*' between the
// numeric coefficient and the monomial ("3/2*l8 - 2/3*l4^2"); operator
// renderings separate factors with spaces ("1/2 d1^2 - 1/6 l4 z1^2").
// Term order is the canonical order of each type's term map.
// ---------------------------------------------------------------------------

enum class MulStyle { star, space };

namespace detail {

struct TermStream {
  std::vector<std::pair<bool, std::string>> items;  // {negative?, body}

  void add(bool neg, std::string body) { items.emplace_back(neg, std::move(body)); }

  std::string str() const {
    if (items.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i == 0) {
        if (items[i].first) out += "-";
      } else {
        out += items[i].first ? " - " : " + ";
      }
      out += items[i].second;
    }
    return out;
  }
};

inline void add_product_term(TermStream& ts, const Rational& c, const std::string& mono,
                             MulStyle style) {
  if (c.is_zero()) return;
  Rational a = c.abs();
  std::string body;
  if (mono.empty())
    body = a.str();
  else if (a.is_one())
    body = mono;
  else
    body = a.str() + (style == MulStyle::star ? "*" : " ") + mono;
  ts.add(c.sign() < 0, std::move(body));
}

inline std::string power_str(const std::string& base, int e) {
  return e == 1 ? base : base + "^" + std::to_string(e);
}

}  // namespace detail

inline std::string lambda_mono_str(const LambdaMono& m, MulStyle style) {
  std::string out;
  for (std::size_t p = 0; p < m.size(); ++p) {
    if (!m[p]) continue;
    if (!out.empty()) out += style == MulStyle::star ? "*" : " ";
    out += detail::power_str("l" + std::to_string(2 * static_cast<int>(p) + 4), m[p]);
  }
  return out;
}

inline std::string render(const LambdaPoly& p, MulStyle style = MulStyle::star) {
  detail::TermStream ts;
  for (const auto& [m, c] : p.terms()) detail::add_product_term(ts, c, lambda_mono_str(m, style), style);
  return ts.str();
}

namespace detail {

// Appends coef * mono with a polynomial coefficient: a single-term coefficient
// is inlined, a multi-term one parenthesized (leading sign pulled out front).
inline void add_poly_coeff_term(TermStream& ts, const LambdaPoly& coef, const std::string& mono) {
  if (coef.is_zero()) return;
  if (mono.empty()) {
    for (const auto& [m, c] : coef.terms())
      add_product_term(ts, c, lambda_mono_str(m, MulStyle::space), MulStyle::space);
    return;
  }
  if (coef.terms().size() == 1) {
    const auto& [m, c] = *coef.terms().begin();
    std::string lm = lambda_mono_str(m, MulStyle::space);
    add_product_term(ts, c, lm.empty() ? mono : lm + " " + mono, MulStyle::space);
    return;
  }
  bool neg = coef.terms().begin()->second.sign() < 0;
  ts.add(neg, "(" + render(neg ? -coef : coef, MulStyle::space) + ") " + mono);
}

}  // namespace detail

inline std::string zmono_str(const ZMono& m) {
  std::string out;
  auto emit = [&](const char* base, const std::vector<int>& e) {
    for (std::size_t p = 0; p < e.size(); ++p) {
      if (!e[p]) continue;
      if (!out.empty()) out += " ";
      out += detail::power_str(base + std::to_string(2 * static_cast<int>(p) + 1), e[p]);
    }
  };
  emit("z", m.z);
  emit("d", m.d);
  return out;
}

inline std::string render(const WeylOperator& w) {
  detail::TermStream ts;
  for (const auto& [m, c] : w.terms()) detail::add_poly_coeff_term(ts, c, zmono_str(m));
  return ts.str();
}

inline std::string render(const LambdaVectorField& v) {
  detail::TermStream ts;
  for (const auto& [m, c] : v.terms())
    detail::add_poly_coeff_term(ts, c, "dl" + std::to_string(m));
  return ts.str();
}

inline std::string render(const XPoly& p) {
  detail::TermStream ts;
  for (int deg = p.degree(); deg >= 0; --deg) {
    std::string mono = deg == 0 ? "" : detail::power_str("x", deg);
    detail::add_poly_coeff_term(ts, p.coeff(deg), mono);
  }
  return ts.str();
}

}  // namespace heatalg

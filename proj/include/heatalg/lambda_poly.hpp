#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "heatalg/context.hpp"
#include "heatalg/rational.hpp"

namespace heatalg {

// Monomial in the lambda variables: exponent vector indexed by position,
// position p <-> lambda_{2p+4}.
using LambdaMono = std::vector<int>;

inline int lambda_mono_weight(const LambdaMono& m) {
  int w = 0;
  for (std::size_t p = 0; p < m.size(); ++p) w += (2 * static_cast<int>(p) + 4) * m[p];
  return w;
}

inline int lambda_mono_degree(const LambdaMono& m) {
  int d = 0;
  for (int e : m) d += e;
  return d;
}

// Graded-lexicographic term order: total weight first, then the exponent
// sequence itself. Deterministic rendering and JSON key order come from this.
struct LambdaMonoLess {
  bool operator()(const LambdaMono& a, const LambdaMono& b) const {
    int wa = lambda_mono_weight(a), wb = lambda_mono_weight(b);
    if (wa != wb) return wa < wb;
    return a < b;
  }
};

// Element of Q[lambda_4, ..., lambda_{4g+2}]. The variable count (2g) is part
// of the value; mixing polynomials over different genera is an error, never a
// silent coercion.
class LambdaPoly {
 public:
  using TermMap = std::map<LambdaMono, Rational, LambdaMonoLess>;

  explicit LambdaPoly(int nlambda) : n_(check_n(nlambda)) {}

  static LambdaPoly zero(int nlambda) { return LambdaPoly(nlambda); }

  static LambdaPoly constant(int nlambda, const Rational& c) {
    LambdaPoly p(nlambda);
    p.add_term(LambdaMono(nlambda, 0), c);
    return p;
  }

  static LambdaPoly one(int nlambda) { return constant(nlambda, Rational(1)); }

  // lambda_{index} as a ring element; index must lie in {4, 6, ..., 4g+2}.
  static LambdaPoly variable(int nlambda, int index) {
    LambdaPoly p(nlambda);
    int pos = var_pos(nlambda, index);
    LambdaMono m(nlambda, 0);
    m[pos] = 1;
    p.add_term(m, Rational(1));
    return p;
  }

  // lambda_{index} under the global convention: lambda_0 = 1 and lambda_s = 0
  // for s outside {0, 4, 6, ..., 4g+2} (covers lambda_2 and negative s).
  static LambdaPoly lambda_atom(int nlambda, int index) {
    if (index == 0) return one(nlambda);
    if (index < 4 || index > 2 * nlambda + 2 || index % 2 != 0) return zero(nlambda);
    return variable(nlambda, index);
  }

  // Checked flavor: any index outside {0, 4, ..., 4g+2} is treated as a bug
  // in the caller's index algebra rather than a legitimate zero.
  static LambdaPoly lambda_checked(int nlambda, int index) {
    if (index != 0 && (index < 4 || index > 2 * nlambda + 2 || index % 2 != 0))
      throw std::logic_error("lambda_checked: index " + std::to_string(index) +
                             " outside {0,4,...," + std::to_string(2 * nlambda + 2) + "}");
    return lambda_atom(nlambda, index);
  }

  int nlambda() const { return n_; }
  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }

  bool is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && lambda_mono_degree(terms_.begin()->first) == 0;
  }

  Rational constant_value() const {
    if (terms_.empty()) return Rational(0);
    if (!is_constant()) throw std::logic_error("LambdaPoly: not a constant");
    return terms_.begin()->second;
  }

  void add_term(const LambdaMono& m, const Rational& c) {
    if (m.size() != static_cast<std::size_t>(n_))
      throw std::invalid_argument("LambdaPoly: monomial arity mismatch");
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  LambdaPoly& operator+=(const LambdaPoly& o) {
    check_same(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  LambdaPoly& operator-=(const LambdaPoly& o) {
    check_same(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }

  friend LambdaPoly operator+(LambdaPoly a, const LambdaPoly& b) { return a += b; }
  friend LambdaPoly operator-(LambdaPoly a, const LambdaPoly& b) { return a -= b; }

  LambdaPoly operator-() const {
    LambdaPoly r(n_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
  }

  friend LambdaPoly operator*(const LambdaPoly& a, const LambdaPoly& b) {
    a.check_same(b);
    LambdaPoly r(a.n_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        LambdaMono m(a.n_);
        for (int p = 0; p < a.n_; ++p) m[p] = ma[p] + mb[p];
        r.add_term(m, ca * cb);
      }
    return r;
  }

  LambdaPoly& operator*=(const LambdaPoly& o) { return *this = *this * o; }

  LambdaPoly scaled(const Rational& c) const {
    LambdaPoly r(n_);
    if (c.is_zero()) return r;
    for (const auto& [m, coef] : terms_) r.terms_.emplace(m, coef * c);
    return r;
  }

  friend LambdaPoly operator*(const Rational& c, const LambdaPoly& p) { return p.scaled(c); }
  friend LambdaPoly operator*(const LambdaPoly& p, const Rational& c) { return p.scaled(c); }

  friend bool operator==(const LambdaPoly& a, const LambdaPoly& b) {
    a.check_same(b);
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const LambdaPoly& a, const LambdaPoly& b) { return !(a == b); }

  // d/d lambda_{index}.
  LambdaPoly d_lambda(int index) const {
    int pos = var_pos(n_, index);
    LambdaPoly r(n_);
    for (const auto& [m, c] : terms_) {
      if (m[pos] == 0) continue;
      LambdaMono mm = m;
      mm[pos] -= 1;
      r.add_term(mm, c * Rational(m[pos]));
    }
    return r;
  }

  int degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, lambda_mono_degree(m));
    return d;  // -1 for the zero polynomial
  }

  std::set<int> weights() const {
    std::set<int> w;
    for (const auto& [m, c] : terms_) w.insert(lambda_mono_weight(m));
    return w;
  }

  // Zero counts as homogeneous of any weight.
  bool is_homogeneous() const { return weights().size() <= 1; }

  bool is_homogeneous_of_weight(int w) const {
    for (const auto& [m, c] : terms_)
      if (lambda_mono_weight(m) != w) return false;
    return true;
  }

  LambdaPoly weight_component(int w) const {
    LambdaPoly r(n_);
    for (const auto& [m, c] : terms_)
      if (lambda_mono_weight(m) == w) r.terms_.emplace(m, c);
    return r;
  }

 private:
  static int check_n(int n) {
    if (n < 1) throw std::invalid_argument("LambdaPoly: need at least one variable");
    return n;
  }
  static int var_pos(int nlambda, int index) {
    if (index < 4 || index > 2 * nlambda + 2 || index % 2 != 0)
      throw std::out_of_range("lambda index " + std::to_string(index) + " outside {4,6,...," +
                              std::to_string(2 * nlambda + 2) + "}");
    return (index - 4) / 2;
  }
  void check_same(const LambdaPoly& o) const {
    if (n_ != o.n_)
      throw std::invalid_argument("LambdaPoly: mixed variable sets (" + std::to_string(n_) +
                                  " vs " + std::to_string(o.n_) + " lambdas)");
  }

  int n_;
  TermMap terms_;
};

}  // namespace heatalg

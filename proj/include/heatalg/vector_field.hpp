#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "heatalg/lambda_poly.hpp"
#include "heatalg/weyl.hpp"
#include "heatalg/xpoly.hpp"

namespace heatalg {

// Polynomial vector field on lambda space: sum_m c_{2m}(lambda) d/dlambda_{2m}.
// Keys are the lambda indices 2m in {4, 6, ..., 4g+2}.
class LambdaVectorField {
 public:
  using TermMap = std::map<int, LambdaPoly>;

  explicit LambdaVectorField(int nlambda) : n_(check_n(nlambda)) {}

  static LambdaVectorField zero(int nlambda) { return LambdaVectorField(nlambda); }

  int nlambda() const { return n_; }
  bool is_zero() const { return coef_.empty(); }
  const TermMap& terms() const { return coef_; }

  void add_term(int lambda_index, const LambdaPoly& c) {
    if ((lambda_index - 4) / 2 < 0 || lambda_index > 2 * n_ + 2 || lambda_index % 2 != 0 ||
        lambda_index < 4)
      throw std::out_of_range("LambdaVectorField: bad target index " +
                              std::to_string(lambda_index));
    if (c.nlambda() != n_)
      throw std::invalid_argument("LambdaVectorField: coefficient arity mismatch");
    if (c.is_zero()) return;
    auto it = coef_.find(lambda_index);
    if (it == coef_.end()) {
      coef_.emplace(lambda_index, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) coef_.erase(it);
    }
  }

  LambdaPoly coeff(int lambda_index) const {
    auto it = coef_.find(lambda_index);
    return it == coef_.end() ? LambdaPoly::zero(n_) : it->second;
  }

  LambdaVectorField& operator+=(const LambdaVectorField& o) {
    check_same(o);
    for (const auto& [m, c] : o.coef_) add_term(m, c);
    return *this;
  }
  LambdaVectorField& operator-=(const LambdaVectorField& o) {
    check_same(o);
    for (const auto& [m, c] : o.coef_) add_term(m, -c);
    return *this;
  }
  friend LambdaVectorField operator+(LambdaVectorField a, const LambdaVectorField& b) {
    return a += b;
  }
  friend LambdaVectorField operator-(LambdaVectorField a, const LambdaVectorField& b) {
    return a -= b;
  }
  LambdaVectorField operator-() const {
    LambdaVectorField r(n_);
    for (const auto& [m, c] : coef_) r.coef_.emplace(m, -c);
    return r;
  }

  LambdaVectorField scaled(const Rational& c) const {
    LambdaVectorField r(n_);
    if (c.is_zero()) return r;
    for (const auto& [m, coef] : coef_) r.coef_.emplace(m, coef.scaled(c));
    return r;
  }
  LambdaVectorField scaled(const LambdaPoly& p) const {
    LambdaVectorField r(n_);
    for (const auto& [m, coef] : coef_) r.add_term(m, coef * p);
    return r;
  }
  friend LambdaVectorField operator*(const Rational& c, const LambdaVectorField& v) {
    return v.scaled(c);
  }
  friend LambdaVectorField operator*(const LambdaPoly& p, const LambdaVectorField& v) {
    return v.scaled(p);
  }

  friend bool operator==(const LambdaVectorField& a, const LambdaVectorField& b) {
    a.check_same(b);
    return a.coef_ == b.coef_;
  }
  friend bool operator!=(const LambdaVectorField& a, const LambdaVectorField& b) {
    return !(a == b);
  }

  // Derivation action on the polynomial ring.
  LambdaPoly apply(const LambdaPoly& p) const {
    if (p.nlambda() != n_)
      throw std::invalid_argument("LambdaVectorField: argument arity mismatch");
    LambdaPoly r(n_);
    for (const auto& [m, c] : coef_) r += c * p.d_lambda(m);
    return r;
  }

  // Coefficient-wise action on operators and x-polynomials (the vector field
  // touches only lambda, which commutes with z, d and x).
  WeylOperator apply(const WeylOperator& w) const {
    WeylOperator r(w.genus());
    for (const auto& [m, c] : w.terms()) r.add_term(m, apply(c));
    return r;
  }
  XPoly apply(const XPoly& p) const {
    XPoly r(LambdaPoly::zero(n_));
    for (int i = 0; i <= p.degree(); ++i) r.set_coeff(i, apply(p.coeff(i)));
    return r;
  }

  // Lie bracket [V, W]: coefficient of d/dlambda_m is V(W_m) - W(V_m).
  static LambdaVectorField bracket(const LambdaVectorField& v, const LambdaVectorField& w) {
    v.check_same(w);
    LambdaVectorField r(v.n_);
    for (const auto& [m, c] : w.coef_) r.add_term(m, v.apply(c));
    for (const auto& [m, c] : v.coef_) r.add_term(m, -w.apply(c));
    return r;
  }

  // A field is homogeneous of weight w when each coefficient of d/dlambda_{2m}
  // is homogeneous of weight w + 2m (weight of d/dlambda_{2m} itself is -2m).
  std::set<int> weights() const {
    std::set<int> ws;
    for (const auto& [m, c] : coef_)
      for (int cw : c.weights()) ws.insert(cw - m);
    return ws;
  }
  bool is_homogeneous() const { return weights().size() <= 1; }
  bool is_homogeneous_of_weight(int w) const {
    auto ws = weights();
    return ws.empty() || (ws.size() == 1 && *ws.begin() == w);
  }

  LambdaVectorField weight_component(int w) const {
    LambdaVectorField r(n_);
    for (const auto& [m, c] : coef_) r.add_term(m, c.weight_component(w + m));
    return r;
  }

 private:
  static int check_n(int n) {
    if (n < 1) throw std::invalid_argument("LambdaVectorField: need at least one variable");
    return n;
  }
  void check_same(const LambdaVectorField& o) const {
    if (n_ != o.n_)
      throw std::invalid_argument("LambdaVectorField: mixed variable sets (" +
                                  std::to_string(n_) + " vs " + std::to_string(o.n_) + ")");
  }

  int n_;
  TermMap coef_;
};

}  // namespace heatalg

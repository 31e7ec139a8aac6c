#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "heatalg/context.hpp"
#include "heatalg/lambda_poly.hpp"

namespace heatalg {

// Polynomial in the curve variable x with coefficients in C. C carries its own
// variable-set information (LambdaPoly knows its lambda count, WeylOperator its
// genus), so the zero polynomial stores a prototype zero coefficient.
//
// x is a central scalar: it commutes with every coefficient, so multiplication
// keeps left factors left. That matters when C is an operator ring.
template <typename C>
class UPoly {
 public:
  explicit UPoly(C zero) : zero_(std::move(zero)) {}

  const C& zero_coeff() const { return zero_; }

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }

  const C& coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return zero_;
    return c_[i];
  }

  void set_coeff(int i, C v) {
    if (i < 0) throw std::out_of_range("UPoly: negative degree");
    if (i >= static_cast<int>(c_.size())) {
      if (v.is_zero()) return;
      c_.resize(i + 1, zero_);
    }
    c_[i] = std::move(v);
    normalize();
  }

  UPoly& operator+=(const UPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), zero_);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    normalize();
    return *this;
  }
  UPoly& operator-=(const UPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), zero_);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    normalize();
    return *this;
  }
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }

  UPoly operator-() const {
    UPoly r(zero_);
    r.c_.reserve(c_.size());
    for (const auto& v : c_) r.c_.push_back(-v);
    return r;
  }

  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    UPoly r(a.zero_);
    if (a.is_zero() || b.is_zero()) return r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, a.zero_);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    r.normalize();
    return r;
  }

  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const UPoly& a, const UPoly& b) { return !(a == b); }

  // Multiply every coefficient (on the right, harmless since scalars are
  // central in all instantiations used here).
  template <typename S>
  UPoly scaled(const S& s) const {
    UPoly r(zero_);
    r.c_.reserve(c_.size());
    for (const auto& v : c_) r.c_.push_back(v * s);
    r.normalize();
    return r;
  }

  UPoly x_shifted(int n) const {  // multiply by x^n
    if (n < 0) throw std::out_of_range("UPoly: negative shift");
    UPoly r(zero_);
    if (is_zero()) return r;
    r.c_.assign(c_.size() + n, zero_);
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i + n] = c_[i];
    return r;
  }

  UPoly dx() const {  // d/dx
    UPoly r(zero_);
    for (std::size_t i = 1; i < c_.size(); ++i) r.c_.push_back(c_[i] * Rational(static_cast<long>(i)));
    r.normalize();
    return r;
  }

 private:
  void normalize() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  C zero_;
  std::vector<C> c_;
};

using XPoly = UPoly<LambdaPoly>;

inline XPoly xpoly_zero(int nlambda) { return XPoly(LambdaPoly::zero(nlambda)); }

inline XPoly xpoly_monomial(LambdaPoly coeff, int deg) {
  XPoly p(LambdaPoly::zero(coeff.nlambda()));
  p.set_coeff(deg, std::move(coeff));
  return p;
}

inline XPoly xpoly_x(int nlambda, int deg = 1) {
  return xpoly_monomial(LambdaPoly::one(nlambda), deg);
}

template <typename C>
struct DivResult {
  UPoly<C> quot;
  UPoly<C> rem;
};

// Euclidean division a = quot * b + rem with deg rem < deg b, for divisors
// whose leading coefficient is a nonzero rational constant (the only case the
// construction ever needs: f'(x) has leading coefficient 2g+1, and the q(.)
// truncations divide by monic monomials). C must support subtraction,
// C * LambdaPoly and C * Rational.
template <typename C>
DivResult<C> euclid_div(const UPoly<C>& a, const UPoly<LambdaPoly>& b) {
  if (b.is_zero()) throw std::domain_error("euclid_div: division by zero polynomial");
  const LambdaPoly& lead = b.coeff(b.degree());
  if (!lead.is_constant())
    throw std::domain_error("euclid_div: divisor leading coefficient must be a rational constant");
  Rational lead_inv = lead.constant_value().inv();

  UPoly<C> q(a.zero_coeff());
  UPoly<C> r = a;
  while (!r.is_zero() && r.degree() >= b.degree()) {
    int shift = r.degree() - b.degree();
    C factor = r.coeff(r.degree()) * lead_inv;
    q.set_coeff(shift, factor);
    // r -= factor * x^shift * b
    for (int i = 0; i <= b.degree(); ++i) {
      C sub = factor * b.coeff(i);
      C cur = r.coeff(i + shift);
      cur -= sub;
      r.set_coeff(i + shift, std::move(cur));
    }
  }
  return {std::move(q), std::move(r)};
}

// Quotient of division by x^n (coefficient shift); notation q(p, x^n).
template <typename C>
UPoly<C> quot_by_x_power(const UPoly<C>& p, int n) {
  if (n < 0) throw std::out_of_range("quot_by_x_power: negative power");
  UPoly<C> r(p.zero_coeff());
  for (int i = n; i <= p.degree(); ++i) r.set_coeff(i - n, p.coeff(i));
  return r;
}

// The hyperelliptic curve polynomial
//   f(x) = x^{2g+1} + sum_{k=0}^{2g-1} lambda_{2(2g+1-k)} x^k,
// e.g. g=1: x^3 + lambda_4 x + lambda_6 (the k = 2g-1 term folds to zero
// because lambda_2 = 0 by convention).
inline XPoly curve_poly(const GenusContext& ctx) {
  int n = ctx.nlambda();
  XPoly f = xpoly_x(n, 2 * ctx.g + 1);
  for (int k = 0; k <= 2 * ctx.g - 1; ++k)
    f.set_coeff(k, LambdaPoly::lambda_atom(n, 2 * (2 * ctx.g + 1 - k)));
  return f;
}

}  // namespace heatalg

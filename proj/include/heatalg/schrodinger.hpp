#pragma once

#include <stdexcept>

#include "heatalg/vector_field.hpp"
#include "heatalg/weyl.hpp"

namespace heatalg {

// Q_{2k} = L_{2k} - H_{2k}: a lambda vector field minus a Weyl operator. The
// two parts act on disjoint variables, so the pair is kept split; `weight`
// records the common homogeneity weight 2k (brackets add weights).
struct SchrodingerOperator {
  int weight;
  LambdaVectorField l;
  WeylOperator h;

  SchrodingerOperator(int w, LambdaVectorField lpart, WeylOperator hpart)
      : weight(w), l(std::move(lpart)), h(std::move(hpart)) {
    if (l.nlambda() != h.nlambda())
      throw std::invalid_argument("SchrodingerOperator: mismatched parts");
  }

  int nlambda() const { return l.nlambda(); }
  bool is_zero() const { return l.is_zero() && h.is_zero(); }

  bool is_homogeneous() const {
    return l.is_homogeneous_of_weight(weight) && h.is_homogeneous_of_weight(weight);
  }

  SchrodingerOperator operator-() const { return {weight, -l, -h}; }

  friend SchrodingerOperator operator+(const SchrodingerOperator& a, const SchrodingerOperator& b) {
    return {a.weight == b.weight ? a.weight : throw_mismatch(), a.l + b.l, a.h + b.h};
  }
  friend SchrodingerOperator operator-(const SchrodingerOperator& a, const SchrodingerOperator& b) {
    return {a.weight == b.weight ? a.weight : throw_mismatch(), a.l - b.l, a.h - b.h};
  }

  SchrodingerOperator scaled(const Rational& c) const { return {weight, l.scaled(c), h.scaled(c)}; }

  // Scaling by a homogeneous polynomial shifts the weight label.
  SchrodingerOperator scaled(const LambdaPoly& p, int p_weight) const {
    if (!p.is_homogeneous_of_weight(p_weight))
      throw std::invalid_argument("SchrodingerOperator: scaling polynomial not homogeneous");
    return {weight + p_weight, l.scaled(p), h.scaled(p)};
  }

  friend bool operator==(const SchrodingerOperator& a, const SchrodingerOperator& b) {
    return a.l == b.l && a.h == b.h;
  }
  friend bool operator!=(const SchrodingerOperator& a, const SchrodingerOperator& b) {
    return !(a == b);
  }

 private:
  static int throw_mismatch() {
    throw std::invalid_argument("SchrodingerOperator: weight mismatch in linear combination");
  }
};

// [Q_i, Q_j] for Q = L - H. Operators on functions of (z, lambda) compose as
//   [L_i - H_i, L_j - H_j] = [L_i, L_j] - (L_i(H_j) - L_j(H_i) - [H_i, H_j]),
// where L(H) is the vector field applied to H's lambda coefficients: the pure
// L-L part stays a vector field and the rest stays a Weyl operator, so the
// bracket has Q shape again.
inline SchrodingerOperator q_commutator(const SchrodingerOperator& a,
                                        const SchrodingerOperator& b) {
  LambdaVectorField l = LambdaVectorField::bracket(a.l, b.l);
  WeylOperator h = a.l.apply(b.h) - b.l.apply(a.h) - WeylOperator::commutator(a.h, b.h);
  return {a.weight + b.weight, std::move(l), std::move(h)};
}

}  // namespace heatalg

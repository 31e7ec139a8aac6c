#pragma once

#include <string>
#include <utility>
#include <vector>

#include "heatalg/context.hpp"
#include "heatalg/lambda_poly.hpp"
#include "heatalg/schrodinger.hpp"
#include "heatalg/vector_field.hpp"
#include "heatalg/weyl.hpp"
#include "heatalg/xpoly.hpp"

namespace heatalg {

// Operator-valued polynomial in x. x commutes with everything, so coefficient
// composition keeps operator order.
using OperatorPoly = UPoly<WeylOperator>;

inline OperatorPoly operator_poly_zero(const GenusContext& ctx) {
  return OperatorPoly(WeylOperator::zero(ctx.g));
}

// Lift an x-polynomial with lambda coefficients to operator coefficients,
// multiplying by `op` (use identity to embed scalars).
inline OperatorPoly lift_scaled(const XPoly& p, const WeylOperator& op) {
  OperatorPoly r(WeylOperator::zero(op.genus()));
  for (int i = 0; i <= p.degree(); ++i) r.set_coeff(i, op.scaled(p.coeff(i)));
  return r;
}

// Entries of the symmetric matrix V(lambda), indices k, m in 1..2g:
//   v_{2k,2m} = sum_{s=0}^{k-1} 2 (k+m-2s) lambda_{2s} lambda_{2(k+m-s)}
//               - (2k (2g-m+1) / (2g+1)) lambda_{2k} lambda_{2m},   k <= m,
// extended symmetrically. The lambda convention (lambda_0 = 1, lambda_2 = 0,
// out-of-range = 0) is load-bearing here.
inline LambdaPoly v_entry(const GenusContext& ctx, int k, int m) {
  if (k < 1 || k > 2 * ctx.g || m < 1 || m > 2 * ctx.g)
    throw std::out_of_range("v_entry: indices must lie in 1..2g");
  if (k > m) std::swap(k, m);
  const int n = ctx.nlambda();
  LambdaPoly v(n);
  for (int s = 0; s <= k - 1; ++s) {
    LambdaPoly term = LambdaPoly::lambda_atom(n, 2 * s) *
                      LambdaPoly::lambda_atom(n, 2 * (k + m - s));
    v += term.scaled(Rational(2 * (k + m - 2 * s)));
  }
  LambdaPoly corr = LambdaPoly::lambda_atom(n, 2 * k) * LambdaPoly::lambda_atom(n, 2 * m);
  v -= corr.scaled(Rational(2 * k * (2 * ctx.g - m + 1), 2 * ctx.g + 1));
  return v;
}

// Generator of the polynomial Lie algebra, k in 0..2g-1:
//   L_{2k} = sum_{m=2}^{2g+1} v_{2k+2, 2m-2}(lambda) d/dlambda_{2m}.
inline LambdaVectorField build_L(const GenusContext& ctx, int k) {
  if (k < 0 || k > 2 * ctx.g - 1) throw std::out_of_range("build_L: k must lie in 0..2g-1");
  LambdaVectorField L(ctx.nlambda());
  for (int m = 2; m <= 2 * ctx.g + 1; ++m) L.add_term(2 * m, v_entry(ctx, k + 1, m - 1));
  return L;
}

inline std::vector<LambdaVectorField> build_l_family(const GenusContext& ctx) {
  std::vector<LambdaVectorField> v;
  v.reserve(2 * ctx.g);
  for (int k = 0; k <= 2 * ctx.g - 1; ++k) v.push_back(build_L(ctx, k));
  return v;
}

// R_i(x) = x^{g-i+1} d/dx q(f(x), x^{2g-2i+2}), i in 1..g. R_1 = x^g.
inline XPoly r_poly(const GenusContext& ctx, int i) {
  if (i < 1 || i > ctx.g) throw std::out_of_range("r_poly: i must lie in 1..g");
  XPoly f = curve_poly(ctx);
  XPoly q = quot_by_x_power(f, 2 * ctx.g - 2 * i + 2);
  return q.dx().x_shifted(ctx.g - i + 1);
}

// h(x) = sum_{i=1}^g x^{g-i} d_{2i-1} + R_i(x) z_{2i-1}.
inline OperatorPoly build_h(const GenusContext& ctx) {
  OperatorPoly h = operator_poly_zero(ctx);
  for (int i = 1; i <= ctx.g; ++i) {
    OperatorPoly di = operator_poly_zero(ctx);
    di.set_coeff(ctx.g - i, WeylOperator::d(ctx.g, 2 * i - 1));
    h += di;
    h += lift_scaled(r_poly(ctx, i), WeylOperator::z(ctx.g, 2 * i - 1));
  }
  return h;
}

// t(x) = 1/2 sum_{i=1}^g (g-i+1) z_{2i-1}^2 q(R_i(x), x^{g-i+2})
//        + sum_{i<j} (g-j+1) z_{2j-1} q(x^{g-i} d_{2i-1} + R_i(x) z_{2i-1}, x^{g-j+2}).
inline OperatorPoly build_t(const GenusContext& ctx) {
  const int g = ctx.g;
  OperatorPoly t = operator_poly_zero(ctx);
  for (int i = 1; i <= g; ++i) {
    WeylOperator zi = WeylOperator::z(g, 2 * i - 1);
    XPoly q = quot_by_x_power(r_poly(ctx, i), g - i + 2);
    t += lift_scaled(q, (zi * zi).scaled(Rational(g - i + 1, 2)));
  }
  for (int i = 1; i <= g - 1; ++i) {
    OperatorPoly hi = operator_poly_zero(ctx);
    hi.set_coeff(g - i, WeylOperator::d(g, 2 * i - 1));
    hi += lift_scaled(r_poly(ctx, i), WeylOperator::z(g, 2 * i - 1));
    for (int j = i + 1; j <= g; ++j) {
      OperatorPoly q = quot_by_x_power(hi, g - j + 2);
      WeylOperator zj = WeylOperator::z(g, 2 * j - 1).scaled(Rational(g - j + 1));
      // z_{2j-1} commutes with everything in q (indices differ), but compose
      // on the left to keep the displayed order.
      OperatorPoly zq = operator_poly_zero(ctx);
      for (int p = 0; p <= q.degree(); ++p) zq.set_coeff(p, zj * q.coeff(p));
      t += zq;
    }
  }
  return t;
}

inline std::pair<OperatorPoly, OperatorPoly> build_h_t(const GenusContext& ctx) {
  return {build_h(ctx), build_t(ctx)};
}

// Generating identity for the whole H family:
//   H(x) = r(-1/4 f''(x) + 2 f(x) t(x) + 1/2 h(x) o h(x), f'(x)),
// a polynomial of degree <= 2g-1 with H_{2k} the coefficient of x^{2g-1-k}.
inline OperatorPoly h_generating(const GenusContext& ctx) {
  XPoly f = curve_poly(ctx);
  OperatorPoly h = build_h(ctx);
  OperatorPoly t = build_t(ctx);

  OperatorPoly dividend = lift_scaled(f.dx().dx(), WeylOperator::identity(ctx.g).scaled(Rational(-1, 4)));
  dividend += lift_scaled(f, WeylOperator::identity(ctx.g).scaled(Rational(2))) * t;
  dividend += (h * h).scaled(Rational(1, 2));

  auto div = euclid_div(dividend, f.dx());
  if (div.rem.degree() > 2 * ctx.g - 1)
    throw std::logic_error("h_generating: remainder degree exceeds 2g-1");
  return div.rem;
}

// Provenance of an H operator, kept alongside so the dual-construction
// cross-checks can say which route produced which operand.
enum class HSource { generating_function, closed_form, recurrence };

inline const char* h_source_name(HSource s) {
  switch (s) {
    case HSource::generating_function: return "generating-function";
    case HSource::closed_form: return "closed-form";
    case HSource::recurrence: return "recurrence";
  }
  return "?";
}

struct HFamily {
  std::vector<WeylOperator> h;  // h[k] = H_{2k}, k = 0..2g-1
  std::vector<HSource> source;
};

inline HFamily h_family_generating(const GenusContext& ctx) {
  OperatorPoly hx = h_generating(ctx);
  HFamily fam;
  for (int k = 0; k <= 2 * ctx.g - 1; ++k) {
    fam.h.push_back(hx.coeff(2 * ctx.g - 1 - k));
    fam.source.push_back(HSource::generating_function);
  }
  return fam;
}

// Closed forms for H_0, H_2, H_4 (k = 0, 1, 2). All lambda subscripts these
// formulas generate stay inside {0, 4, ..., 4g+2}; lambda_checked enforces
// that, so an index slip fails loudly instead of folding to zero.
inline WeylOperator h_closed_form(const GenusContext& ctx, int k) {
  const int g = ctx.g;
  const int n = ctx.nlambda();
  if (k < 0 || k > std::min(2, 2 * g - 1))
    throw std::out_of_range("h_closed_form: k must lie in 0..min(2, 2g-1)");
  WeylOperator H(g);

  auto z = [&](int i) { return WeylOperator::z(g, i); };
  auto d = [&](int i) { return WeylOperator::d(g, i); };
  auto lam = [&](int i) { return LambdaPoly::lambda_checked(n, i); };

  if (k == 0) {
    for (int s = 1; s <= g; ++s) H += (z(2 * s - 1) * d(2 * s - 1)).scaled(Rational(2 * s - 1));
    H -= WeylOperator::identity(g).scaled(Rational(g * (g + 1), 2));
    return H;
  }

  if (k == 1) {
    H += (d(1) * d(1)).scaled(Rational(1, 2));
    for (int s = 1; s <= g - 1; ++s)
      H += (z(2 * s - 1) * d(2 * s + 1)).scaled(Rational(2 * s - 1));
    for (int s = 1; s <= g - 1; ++s)
      H -= (z(2 * s + 1) * d(2 * s - 1)).scaled(lam(4).scaled(Rational(4 * (g - s), 2 * g + 1)));
    for (int s = 1; s <= g; ++s) {
      LambdaPoly c = lam(4 * s).scaled(Rational(2 * s - 1, 2)) -
                     (lam(4) * lam(4 * s - 4)).scaled(Rational(2 * (g - s + 1), 2 * g + 1));
      H += (z(2 * s - 1) * z(2 * s - 1)).scaled(c);
    }
    return H;
  }

  // k == 2 (needs g >= 2 for k <= 2g-1, checked above)
  H += d(1) * d(3);
  for (int s = 1; s <= g - 2; ++s) H += (z(2 * s - 1) * d(2 * s + 3)).scaled(Rational(2 * s - 1));
  for (int s = 1; s <= g - 1; ++s)
    H += (z(2 * s + 1) * d(2 * s + 1)).scaled(lam(4).scaled(Rational(2 * s - 1)));
  for (int s = 1; s <= g - 1; ++s)
    H -= (z(2 * s + 1) * d(2 * s - 1)).scaled(lam(6).scaled(Rational(6 * (g - s), 2 * g + 1)));
  for (int s = 1; s <= g; ++s) {
    LambdaPoly c = lam(4 * s + 2).scaled(Rational(2 * s - 1)) -
                   (lam(6) * lam(4 * s - 4)).scaled(Rational(3 * (g - s + 1), 2 * g + 1));
    H += (z(2 * s - 1) * z(2 * s - 1)).scaled(c);
  }
  for (int s = 1; s <= g - 1; ++s)
    H += (z(2 * s - 1) * z(2 * s + 1)).scaled(lam(4 * s + 4).scaled(Rational(2 * s - 1)));
  H -= WeylOperator::constant(g, lam(4).scaled(Rational(g * (g - 1), 2)));
  return H;
}

// alpha and delta of H_{2k} per the second-order shape:
// alpha_ab = 1 iff a + b = 2k (odd a, b in 1..2g-1); delta is a lambda_{2k}
// multiple. delta references lambda_{2k} for every k, and k = 1 legitimately
// hits lambda_2 = 0, so this uses the folding atom.
struct AlphaDelta {
  std::vector<std::pair<int, int>> alpha_pairs;  // a <= b with alpha_ab = 1
  LambdaPoly delta;
};

inline AlphaDelta alpha_delta(const GenusContext& ctx, int k) {
  if (k < 0 || k > 2 * ctx.g - 1) throw std::out_of_range("alpha_delta: k must lie in 0..2g-1");
  AlphaDelta r{{}, LambdaPoly::zero(ctx.nlambda())};
  for (int a = 1; a <= 2 * ctx.g - 1; a += 2) {
    int b = 2 * k - a;
    if (b >= a && b <= 2 * ctx.g - 1 && b % 2 == 1) r.alpha_pairs.emplace_back(a, b);
  }
  const int g = ctx.g;
  int fl = (k + 1) / 2;
  Rational coef = Rational(-(2 * g - k + 1) * (2 * g - k), 4) +
                  Rational((g + fl - k) * (g - fl), 2);
  r.delta = LambdaPoly::lambda_atom(ctx.nlambda(), 2 * k).scaled(coef);
  return r;
}

inline SchrodingerOperator build_Q(const GenusContext& ctx, int k, const WeylOperator& h2k) {
  return SchrodingerOperator(2 * k, build_L(ctx, k), h2k);
}

// Q_{2k} = 1/(2(k-2)) [Q_2, Q_{2k-2}]
//          - 2(2g-k+1)/((k-2)(2g+1)) (lambda_{2k} Q_0 - lambda_4 Q_{2k-4}),
// valid for k = 3, ..., 2g-1.
inline SchrodingerOperator q_recurrence(const GenusContext& ctx, int k,
                                        const SchrodingerOperator& q2,
                                        const SchrodingerOperator& q2km2,
                                        const SchrodingerOperator& q0,
                                        const SchrodingerOperator& q2km4) {
  if (k < 3 || k > 2 * ctx.g - 1) throw std::out_of_range("q_recurrence: k must lie in 3..2g-1");
  const int n = ctx.nlambda();
  SchrodingerOperator br = q_commutator(q2, q2km2).scaled(Rational(1, 2 * (k - 2)));
  LambdaPoly lam2k = LambdaPoly::lambda_checked(n, 2 * k);
  LambdaPoly lam4 = LambdaPoly::lambda_checked(n, 4);
  SchrodingerOperator corr = q0.scaled(lam2k, 2 * k) - q2km4.scaled(lam4, 4);
  return br - corr.scaled(Rational(2 * (2 * ctx.g - k + 1), (k - 2) * (2 * ctx.g + 1)));
}

// Independent construction of the whole family: closed forms for k <= 2, then
// the commutator recurrence. The L parts come out of the recurrence too; the
// caller can cross-check them against build_L.
inline HFamily h_family_recurrence(const GenusContext& ctx) {
  HFamily fam;
  std::vector<SchrodingerOperator> q;
  for (int k = 0; k <= 2 * ctx.g - 1; ++k) {
    if (k <= 2) {
      fam.h.push_back(h_closed_form(ctx, k));
      fam.source.push_back(HSource::closed_form);
    } else {
      SchrodingerOperator qk = q_recurrence(ctx, k, q[1], q[k - 1], q[0], q[k - 2]);
      // The recurrence reproduces the vector-field part as a byproduct; a
      // mismatch with the direct construction would mean the recurrence and
      // the Lie algebra disagree, which must never pass silently.
      if (qk.l != build_L(ctx, k))
        throw std::logic_error("h_family_recurrence: recurrence L-part disagrees with build_L");
      fam.h.push_back(qk.h);
      fam.source.push_back(HSource::recurrence);
    }
    q.push_back(build_Q(ctx, k, fam.h.back()));
  }
  return fam;
}

inline std::vector<SchrodingerOperator> build_q_family(const GenusContext& ctx) {
  HFamily fam = h_family_generating(ctx);
  std::vector<SchrodingerOperator> q;
  q.reserve(fam.h.size());
  for (int k = 0; k <= 2 * ctx.g - 1; ++k) q.push_back(build_Q(ctx, k, fam.h[k]));
  return q;
}

}  // namespace heatalg

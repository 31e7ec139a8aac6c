#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "heatalg/generators.hpp"
#include "heatalg/text.hpp"

namespace heatalg {

// ---------------------------------------------------------------------------
// Calculus of logarithmic derivatives. psi_I stands for the I-th logarithmic
// derivative of a heat-system solution phi:
//
//   psi_a     = + d_a log phi                     (one index)
//   psi_I     = - d_I log phi                     (two or more indices)
//
// which gives the closed differentiation rules used throughout:
//
//   d_j z_a   = [a = j],   d_j lambda = 0,
//   d_j psi_a = - psi_{a j},
//   d_j psi_I = + psi_{I j}          for |I| >= 2.
// ---------------------------------------------------------------------------

// Ascending multiset of odd z-indices naming one psi symbol.
using PsiKey = std::vector<int>;

struct PsiMono {
  std::vector<int> z;          // exponents by position, p <-> z_{2p+1}
  std::map<PsiKey, int> psi;   // psi_I^e factors

  explicit PsiMono(int g) : z(g, 0) {}

  bool is_one() const {
    if (!psi.empty()) return false;
    for (int e : z)
      if (e) return false;
    return true;
  }

  // Number of psi symbols counted with multiplicity; a term is a "psi
  // product" when this exceeds 1.
  int psi_factor_count() const {
    int n = 0;
    for (const auto& [key, e] : psi) n += e;
    return n;
  }

  int max_psi_size() const {
    int n = 0;
    for (const auto& [key, e] : psi) n = std::max(n, static_cast<int>(key.size()));
    return n;
  }

  // wt z_k = -k, wt psi_I = sum of I.
  int weight() const {
    int w = 0;
    for (std::size_t p = 0; p < z.size(); ++p) w -= (2 * static_cast<int>(p) + 1) * z[p];
    for (const auto& [key, e] : psi)
      for (int idx : key) w += idx * e;
    return w;
  }

  friend bool operator==(const PsiMono& a, const PsiMono& b) {
    return a.z == b.z && a.psi == b.psi;
  }
};

// Display order: heavier psi content first, lambda-z terms last.
struct PsiMonoLess {
  bool operator()(const PsiMono& a, const PsiMono& b) const {
    int oa = 0, ob = 0;
    for (const auto& [key, e] : a.psi) oa += static_cast<int>(key.size()) * e;
    for (const auto& [key, e] : b.psi) ob += static_cast<int>(key.size()) * e;
    if (oa != ob) return oa > ob;
    auto ia = a.psi.begin(), ib = b.psi.begin();
    for (; ia != a.psi.end() && ib != b.psi.end(); ++ia, ++ib) {
      if (ia->first != ib->first) return ia->first < ib->first;
      if (ia->second != ib->second) return ia->second < ib->second;
    }
    if (ia != a.psi.end() || ib != b.psi.end()) return ib != b.psi.end();
    return a.z < b.z;
  }
};

// Polynomial in z variables and psi symbols over Q[lambda].
class PsiPoly {
 public:
  using TermMap = std::map<PsiMono, LambdaPoly, PsiMonoLess>;

  explicit PsiPoly(int g) : g_(check_g(g)) {}

  static PsiPoly zero(int g) { return PsiPoly(g); }

  static PsiPoly constant(int g, const LambdaPoly& c) {
    PsiPoly p(g);
    p.add_term(PsiMono(g), c);
    return p;
  }

  static PsiPoly z_var(int g, int index) {
    PsiPoly p(g);
    PsiMono m(g);
    m.z[detail::z_pos_checked(g, index, "PsiPoly")] = 1;
    p.add_term(m, LambdaPoly::one(2 * g));
    return p;
  }

  static PsiPoly psi(int g, PsiKey key) {
    if (key.empty()) throw std::invalid_argument("PsiPoly: empty psi index set");
    std::sort(key.begin(), key.end());
    for (int idx : key) detail::z_pos_checked(g, idx, "PsiPoly");
    PsiPoly p(g);
    PsiMono m(g);
    m.psi.emplace(std::move(key), 1);
    p.add_term(m, LambdaPoly::one(2 * g));
    return p;
  }

  int genus() const { return g_; }
  int nlambda() const { return 2 * g_; }
  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }

  void add_term(const PsiMono& m, const LambdaPoly& c) {
    if (m.z.size() != static_cast<std::size_t>(g_))
      throw std::invalid_argument("PsiPoly: monomial arity mismatch");
    if (c.nlambda() != 2 * g_)
      throw std::invalid_argument("PsiPoly: coefficient arity mismatch");
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  PsiPoly& operator+=(const PsiPoly& o) {
    check_same(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  PsiPoly& operator-=(const PsiPoly& o) {
    check_same(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend PsiPoly operator+(PsiPoly a, const PsiPoly& b) { return a += b; }
  friend PsiPoly operator-(PsiPoly a, const PsiPoly& b) { return a -= b; }
  PsiPoly operator-() const {
    PsiPoly r(g_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
  }

  PsiPoly scaled(const Rational& c) const {
    PsiPoly r(g_);
    if (c.is_zero()) return r;
    for (const auto& [m, coef] : terms_) r.terms_.emplace(m, coef.scaled(c));
    return r;
  }
  PsiPoly scaled(const LambdaPoly& p) const {
    PsiPoly r(g_);
    for (const auto& [m, coef] : terms_) r.add_term(m, coef * p);
    return r;
  }

  // z's and psi's commute with each other; this is a plain commutative product.
  friend PsiPoly operator*(const PsiPoly& a, const PsiPoly& b) {
    a.check_same(b);
    PsiPoly r(a.g_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        PsiMono m = ma;
        for (int p = 0; p < a.g_; ++p) m.z[p] += mb.z[p];
        for (const auto& [key, e] : mb.psi) m.psi[key] += e;
        r.add_term(m, ca * cb);
      }
    return r;
  }

  friend bool operator==(const PsiPoly& a, const PsiPoly& b) {
    a.check_same(b);
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const PsiPoly& a, const PsiPoly& b) { return !(a == b); }

  bool has_psi_products() const {
    for (const auto& [m, c] : terms_)
      if (m.psi_factor_count() >= 2) return true;
    return false;
  }

  std::set<int> weights() const {
    std::set<int> w;
    for (const auto& [m, c] : terms_)
      for (int cw : c.weights()) w.insert(cw + m.weight());
    return w;
  }
  bool is_homogeneous() const { return weights().size() <= 1; }
  bool is_homogeneous_of_weight(int w) const {
    auto ws = weights();
    return ws.empty() || (ws.size() == 1 && *ws.begin() == w);
  }

 private:
  static int check_g(int g) {
    if (g < 1) throw std::invalid_argument("PsiPoly: genus must be >= 1");
    return g;
  }
  void check_same(const PsiPoly& o) const {
    if (g_ != o.g_)
      throw std::invalid_argument("PsiPoly: mixed genera (" + std::to_string(g_) + " vs " +
                                  std::to_string(o.g_) + ")");
  }

  int g_;
  TermMap terms_;
};

// d/dz_j on a psi polynomial, by the rules in the header comment.
inline PsiPoly psi_derivative(const PsiPoly& p, int j) {
  const int g = p.genus();
  const int pos = detail::z_pos_checked(g, j, "psi_derivative");
  PsiPoly r(g);
  for (const auto& [m, c] : p.terms()) {
    if (m.z[pos] > 0) {
      PsiMono m2 = m;
      m2.z[pos] -= 1;
      r.add_term(m2, c.scaled(Rational(m.z[pos])));
    }
    for (const auto& [key, e] : m.psi) {
      PsiKey key2 = key;
      key2.push_back(j);
      std::sort(key2.begin(), key2.end());
      int sign = key.size() == 1 ? -1 : +1;
      PsiMono m2 = m;
      if (--m2.psi[key] == 0) m2.psi.erase(key);
      m2.psi[key2] += 1;
      r.add_term(m2, c.scaled(Rational(sign * e)));
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Right-hand side of the logarithmic heat equation: for Q_{2k} phi = 0,
//   L_{2k} log phi = H_{2k} phi / phi
// expressed in psi symbols. Reading H in its canonical shape
//   1/2 sum alpha_ab d_a d_b + sum beta_ab z_a d_b + 1/2 sum gamma_ab z_a z_b + delta,
// each printed second-order term C d_a d_b contributes C (psi_a psi_b - psi_ab),
// each z_a d_b term contributes C z_a psi_b, and the potential passes through.
// ---------------------------------------------------------------------------
inline PsiPoly heat_log_rhs(const GenusContext& ctx, const WeylOperator& h2k) {
  const int g = ctx.g;
  auto q = h2k.decompose_quadratic();
  PsiPoly r(g);
  for (const auto& [ab, alpha] : q.alpha) {
    auto [a, b] = ab;
    Rational c = alpha.constant_value();  // Lemma 2.1 shape: alpha is scalar
    if (a == b) c = c * Rational(1, 2);
    r += (PsiPoly::psi(g, {a}) * PsiPoly::psi(g, {b}) - PsiPoly::psi(g, {a, b})).scaled(c);
  }
  for (const auto& [ab, beta] : q.beta) {
    auto [a, b] = ab;
    r += (PsiPoly::z_var(g, a) * PsiPoly::psi(g, {b})).scaled(beta);
  }
  for (const auto& [ab, gamma] : q.gamma) {
    auto [a, b] = ab;
    LambdaPoly c = a == b ? gamma.scaled(Rational(1, 2)) : gamma;
    r += (PsiPoly::z_var(g, a) * PsiPoly::z_var(g, b)).scaled(c);
  }
  r += PsiPoly::constant(g, q.delta);
  return r;
}

// ---------------------------------------------------------------------------
// Derivation operator (script L):
//   scriptL_{2k} = L_{2k} - sum_{(a,b)} alpha^(k)_ab psi_a d_b - sum beta^(k)_ab z_a d_b
// over ordered pairs. `zd` and `psi_d` store the already-signed z d and
// psi d parts, so the whole operator reads L + zd + psi_d.
// ---------------------------------------------------------------------------
struct DerivationOperator {
  int k;                                          // this is scriptL_{2k}
  LambdaVectorField l;                            // expanded L_{2k}
  WeylOperator zd;                                // signed z_a d_b part
  std::map<std::pair<int, int>, Rational> psi_d;  // signed psi_a d_b coefficients

  friend bool operator==(const DerivationOperator& a, const DerivationOperator& b) {
    return a.k == b.k && a.l == b.l && a.zd == b.zd && a.psi_d == b.psi_d;
  }
  friend bool operator!=(const DerivationOperator& a, const DerivationOperator& b) {
    return !(a == b);
  }
};

inline DerivationOperator build_script_l(const GenusContext& ctx, int k,
                                         const WeylOperator& h2k) {
  const int g = ctx.g;
  auto q = h2k.decompose_quadratic();
  DerivationOperator D{k, build_L(ctx, k), WeylOperator::zero(g), {}};
  for (const auto& [ab, beta] : q.beta) {
    auto [a, b] = ab;
    D.zd -= WeylOperator::z(g, a) * WeylOperator::d(g, b) * beta;
  }
  for (int a = 1; a <= 2 * g - 1; a += 2)
    for (int b = 1; b <= 2 * g - 1; b += 2) {
      Rational alpha = q.alpha_at(a, b, ctx.nlambda()).constant_value();
      if (!alpha.is_zero()) D.psi_d[{a, b}] = -alpha;
    }
  return D;
}

// ---------------------------------------------------------------------------
// Burgers-analog right-hand sides: w_{2k,j} = scriptL_{2k} psi_j, computed
// from the defining action
//   w = d_j (heat_log_rhs) - sum alpha_ab psi_a d_b psi_j - sum beta_ab z_a d_b psi_j.
// All psi-products introduced by the first summand cancel against the second;
// a residue would mean the conventions are inconsistent, so it throws.
// ---------------------------------------------------------------------------
inline PsiPoly compute_w(const GenusContext& ctx, int k, int j, const WeylOperator& h2k) {
  const int g = ctx.g;
  detail::z_pos_checked(g, j, "compute_w");
  auto q = h2k.decompose_quadratic();
  PsiPoly w = psi_derivative(heat_log_rhs(ctx, h2k), j);
  // - psi_a * (d_b psi_j) = + psi_a psi_{b j}
  for (int a = 1; a <= 2 * g - 1; a += 2)
    for (int b = 1; b <= 2 * g - 1; b += 2) {
      Rational alpha = q.alpha_at(a, b, ctx.nlambda()).constant_value();
      if (alpha.is_zero()) continue;
      PsiKey bj{b, j};
      std::sort(bj.begin(), bj.end());
      w += (PsiPoly::psi(g, {a}) * PsiPoly::psi(g, bj)).scaled(alpha);
    }
  // - beta_ab z_a * (d_b psi_j) = + beta_ab z_a psi_{b j}
  for (const auto& [ab, beta] : q.beta) {
    auto [a, b] = ab;
    PsiKey bj{b, j};
    std::sort(bj.begin(), bj.end());
    w += (PsiPoly::z_var(g, a) * PsiPoly::psi(g, bj)).scaled(beta);
  }
  if (w.has_psi_products())
    throw std::logic_error("compute_w: psi products failed to cancel; conventions inconsistent");
  (void)k;
  return w;
}

// Independent closed form of the same thing, used as a cross-check:
//   w_{2k,j} = -1/2 sum_{(a,b) ordered, alpha_ab != 0} psi_{a b j}
//            + sum_b beta_jb psi_b + sum_a gamma_ja z_a.
inline PsiPoly compute_w_closed(const GenusContext& ctx, int k, int j,
                                const WeylOperator& h2k) {
  const int g = ctx.g;
  detail::z_pos_checked(g, j, "compute_w_closed");
  auto q = h2k.decompose_quadratic();
  PsiPoly w(g);
  for (int a = 1; a <= 2 * g - 1; a += 2)
    for (int b = 1; b <= 2 * g - 1; b += 2) {
      Rational alpha = q.alpha_at(a, b, ctx.nlambda()).constant_value();
      if (alpha.is_zero()) continue;
      PsiKey abj{a, b, j};
      std::sort(abj.begin(), abj.end());
      w += PsiPoly::psi(g, abj).scaled(alpha * Rational(-1, 2));
    }
  for (int b = 1; b <= 2 * g - 1; b += 2) {
    LambdaPoly beta = q.beta_at(j, b, ctx.nlambda());
    if (!beta.is_zero()) w += PsiPoly::psi(g, {b}).scaled(beta);
  }
  for (int a = 1; a <= 2 * g - 1; a += 2) {
    LambdaPoly gamma = q.gamma_at(j, a, ctx.nlambda());
    if (!gamma.is_zero()) w += PsiPoly::z_var(g, a).scaled(gamma);
  }
  (void)k;
  return w;
}

// ---------------------------------------------------------------------------
// Text conversions and rendering for the psi layer.
// ---------------------------------------------------------------------------

inline PsiPoly to_psi_poly(const GeneralPoly& p, int genus) {
  PsiPoly out(genus);
  const int n = 2 * genus;
  for (const auto& [mono, c] : p.terms()) {
    LambdaMono lm(n, 0);
    PsiMono pm(genus);
    for (const auto& [a, e] : mono) {
      switch (a.kind) {
        case AtomKind::lambda:
          lm[detail::lambda_pos_checked(n, a.index, "psi polynomial")] += e;
          break;
        case AtomKind::z:
          pm.z[detail::z_pos_checked(genus, a.index, "psi polynomial")] += e;
          break;
        case AtomKind::psi: {
          for (int idx : a.psi) detail::z_pos_checked(genus, idx, "psi polynomial");
          pm.psi[a.psi] += e;
          break;
        }
        default:
          detail::bad_atom("psi polynomial", a);
      }
    }
    LambdaPoly coef(n);
    coef.add_term(lm, c);
    out.add_term(pm, coef);
  }
  return out;
}

inline PsiPoly parse_psi_poly(const std::string& s, int genus) {
  return to_psi_poly(parse_general(s), genus);
}

inline std::string psi_mono_str(const PsiMono& m) {
  std::string out;
  for (std::size_t p = 0; p < m.z.size(); ++p) {
    if (!m.z[p]) continue;
    if (!out.empty()) out += " ";
    out += detail::power_str("z" + std::to_string(2 * static_cast<int>(p) + 1), m.z[p]);
  }
  for (const auto& [key, e] : m.psi) {
    if (!out.empty()) out += " ";
    GenAtom a;
    a.kind = AtomKind::psi;
    a.psi = key;
    bool compact = std::all_of(key.begin(), key.end(), [](int i) { return i <= 9; });
    out += detail::power_str(atom_name(a, !compact), e);
  }
  return out;
}

inline std::string render(const PsiPoly& p) {
  detail::TermStream ts;
  for (const auto& [m, c] : p.terms()) detail::add_poly_coeff_term(ts, c, psi_mono_str(m));
  return ts.str();
}

inline DerivationOperator to_script_l(const GeneralPoly& p, const GenusContext& ctx) {
  const int g = ctx.g;
  int k = -1;
  WeylOperator zd = WeylOperator::zero(g);
  std::map<std::pair<int, int>, Rational> psi_d;
  for (const auto& [mono, c] : p.terms()) {
    // Classify the term: the L symbol, a psi_a d_b term, or a lambda z_a d_b term.
    bool has_op_l = false, has_psi = false;
    for (const auto& [a, e] : mono) {
      if (a.kind == AtomKind::op_l) has_op_l = true;
      if (a.kind == AtomKind::psi) has_psi = true;
    }
    if (has_op_l) {
      if (mono.size() != 1 || mono.begin()->second != 1 || !c.is_one())
        throw std::invalid_argument("derivation operator: the L symbol must appear alone");
      int idx = mono.begin()->first.index;
      if (idx % 2 != 0 || idx < 0 || idx / 2 > 2 * g - 1 || k != -1)
        throw std::invalid_argument("derivation operator: bad L symbol index");
      k = idx / 2;
    } else if (has_psi) {
      if (mono.size() != 2)
        throw std::invalid_argument("derivation operator: psi term must be psi_a d_b");
      auto it = mono.begin();
      const GenAtom& pa = it->first;
      int pe = it->second;
      ++it;
      const GenAtom& da = it->first;
      int de = it->second;
      if (pa.kind != AtomKind::psi || pa.psi.size() != 1 || pe != 1 ||
          da.kind != AtomKind::d || de != 1)
        throw std::invalid_argument("derivation operator: psi term must be psi_a d_b");
      detail::z_pos_checked(g, pa.psi[0], "derivation operator");
      detail::z_pos_checked(g, da.index, "derivation operator");
      auto [pit, fresh] = psi_d.emplace(std::make_pair(pa.psi[0], da.index), c);
      if (!fresh) {
        pit->second += c;
        if (pit->second.is_zero()) psi_d.erase(pit);
      }
    } else {
      GeneralPoly one_term;
      one_term.add_term(mono, c);
      WeylOperator w = to_weyl(one_term, g);
      for (const auto& [zm, coef] : w.terms())
        if (!(zm.z_total() == 1 && zm.d_total() == 1))
          throw std::invalid_argument("derivation operator: z d terms must be first order");
      zd += w;
    }
  }
  if (k < 0) throw std::invalid_argument("derivation operator: missing L symbol");
  return DerivationOperator{k, build_L(ctx, k), std::move(zd), std::move(psi_d)};
}

inline DerivationOperator parse_script_l(const std::string& s, const GenusContext& ctx) {
  return to_script_l(parse_general(s), ctx);
}

inline std::string render(const DerivationOperator& D) {
  detail::TermStream ts;
  ts.add(false, "L" + std::to_string(2 * D.k));
  for (const auto& [ab, c] : D.psi_d) {
    GenAtom pa;
    pa.kind = AtomKind::psi;
    pa.psi = {ab.first};
    std::string body =
        atom_name(pa, /*psi_braces=*/ab.first > 9) + " d" + std::to_string(ab.second);
    detail::add_product_term(ts, c, body, MulStyle::space);
  }
  for (const auto& [m, c] : D.zd.terms()) detail::add_poly_coeff_term(ts, c, zmono_str(m));
  return ts.str();
}

}  // namespace heatalg

#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "heatalg/context.hpp"
#include "heatalg/lambda_poly.hpp"
#include "heatalg/rational.hpp"

namespace heatalg {

// Monomial z^a d^b in the odd variables; position p <-> index 2p+1. Stored
// normal ordered: all z factors to the left of all d factors.
struct ZMono {
  std::vector<int> z;
  std::vector<int> d;

  explicit ZMono(int g) : z(g, 0), d(g, 0) {}

  int nvars() const { return static_cast<int>(z.size()); }
  bool is_identity() const {
    for (int e : z) if (e) return false;
    for (int e : d) if (e) return false;
    return true;
  }
  int z_total() const { int t = 0; for (int e : z) t += e; return t; }
  int d_total() const { int t = 0; for (int e : d) t += e; return t; }

  // wt z_k = -k, wt d_k = +k.
  int weight() const {
    int w = 0;
    for (std::size_t p = 0; p < z.size(); ++p)
      w += (2 * static_cast<int>(p) + 1) * (d[p] - z[p]);
    return w;
  }

  friend bool operator==(const ZMono& a, const ZMono& b) { return a.z == b.z && a.d == b.d; }
};

// Display-oriented order: second-order derivative terms first, then mixed z d
// terms, then pure z terms, constants last; deterministic tie-breaks.
struct ZMonoLess {
  bool operator()(const ZMono& a, const ZMono& b) const {
    int da = a.d_total(), db = b.d_total();
    if (da != db) return da > db;
    int za = a.z_total(), zb = b.z_total();
    if (za != zb) return za > zb;
    if (a.z != b.z) return a.z > b.z;
    return a.d > b.d;
  }
};

// Element of the Weyl-algebra-like ring: finite sum of lambda-polynomial
// coefficients times normal-ordered monomials z^a d^b in z_1, z_3, ...,
// z_{2g-1} and d_k = d/dz_k. Composition re-normal-orders via
//   d^n z^m = sum_k C(n,k) C(m,k) k! z^{m-k} d^{n-k}   (per variable).
class WeylOperator {
 public:
  using TermMap = std::map<ZMono, LambdaPoly, ZMonoLess>;

  explicit WeylOperator(int g) : g_(check_g(g)) {}

  static WeylOperator zero(int g) { return WeylOperator(g); }

  static WeylOperator constant(int g, const LambdaPoly& c) {
    WeylOperator w(g);
    if (c.nlambda() != 2 * g)
      throw std::invalid_argument("WeylOperator: coefficient arity mismatch");
    w.add_term(ZMono(g), c);
    return w;
  }

  static WeylOperator identity(int g) { return constant(g, LambdaPoly::one(2 * g)); }

  static WeylOperator z(int g, int index) { return gen(g, index, false); }
  static WeylOperator d(int g, int index) { return gen(g, index, true); }

  int genus() const { return g_; }
  int nlambda() const { return 2 * g_; }
  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }

  void add_term(const ZMono& m, const LambdaPoly& c) {
    if (m.nvars() != g_) throw std::invalid_argument("WeylOperator: monomial arity mismatch");
    if (c.nlambda() != 2 * g_)
      throw std::invalid_argument("WeylOperator: coefficient arity mismatch");
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  LambdaPoly coeff(const ZMono& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? LambdaPoly::zero(2 * g_) : it->second;
  }

  WeylOperator& operator+=(const WeylOperator& o) {
    check_same(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  WeylOperator& operator-=(const WeylOperator& o) {
    check_same(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend WeylOperator operator+(WeylOperator a, const WeylOperator& b) { return a += b; }
  friend WeylOperator operator-(WeylOperator a, const WeylOperator& b) { return a -= b; }

  WeylOperator operator-() const {
    WeylOperator r(g_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
  }

  WeylOperator scaled(const Rational& c) const {
    WeylOperator r(g_);
    if (c.is_zero()) return r;
    for (const auto& [m, coef] : terms_) r.terms_.emplace(m, coef.scaled(c));
    return r;
  }
  WeylOperator scaled(const LambdaPoly& p) const {
    WeylOperator r(g_);
    for (const auto& [m, coef] : terms_) r.add_term(m, coef * p);
    return r;
  }
  friend WeylOperator operator*(const WeylOperator& w, const Rational& c) { return w.scaled(c); }
  friend WeylOperator operator*(const Rational& c, const WeylOperator& w) { return w.scaled(c); }
  friend WeylOperator operator*(const WeylOperator& w, const LambdaPoly& p) { return w.scaled(p); }
  friend WeylOperator operator*(const LambdaPoly& p, const WeylOperator& w) { return w.scaled(p); }

  // Composition (operator product), result normal ordered.
  friend WeylOperator operator*(const WeylOperator& a, const WeylOperator& b) {
    a.check_same(b);
    WeylOperator r(a.g_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.accumulate_product(ma, ca, mb, cb);
    return r;
  }

  friend bool operator==(const WeylOperator& a, const WeylOperator& b) {
    a.check_same(b);
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const WeylOperator& a, const WeylOperator& b) { return !(a == b); }

  static WeylOperator commutator(const WeylOperator& a, const WeylOperator& b) {
    return a * b - b * a;
  }

  // Apply to a multiplication operator (a polynomial in z alone); the result
  // is again a pure polynomial in z.
  WeylOperator apply(const WeylOperator& fn) const {
    check_same(fn);
    WeylOperator r(g_);
    for (const auto& [mf, cf] : fn.terms_) {
      if (mf.d_total() != 0)
        throw std::invalid_argument("WeylOperator::apply: argument must be a z-polynomial");
      for (const auto& [mo, co] : terms_) {
        // d^b applied to z^c
        Rational scale(1);
        bool dead = false;
        ZMono m(g_);
        for (int p = 0; p < g_ && !dead; ++p) {
          if (mf.z[p] < mo.d[p]) { dead = true; break; }
          scale *= rat_falling(mf.z[p], mo.d[p]);
          m.z[p] = mo.z[p] + mf.z[p] - mo.d[p];
        }
        if (!dead) r.add_term(m, (co * cf).scaled(scale));
      }
    }
    return r;
  }

  // Grading. Term weight = wt(coefficient) + wt(monomial); zero operator is
  // homogeneous of any weight.
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

  int max_lambda_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, c.degree());
    return d;
  }

  // Shape decomposition of a second-order operator of heat type:
  //   1/2 sum alpha_ab d_a d_b + sum beta_ab z_a d_b + 1/2 sum gamma_ab z_a z_b + delta
  // with alpha, gamma symmetric (sums over all ordered pairs). Keys are pairs
  // of odd variable indices (a, b); alpha/gamma maps carry a <= b entries.
  struct Quadratic {
    std::map<std::pair<int, int>, LambdaPoly> alpha;  // alpha_ab for a <= b
    std::map<std::pair<int, int>, LambdaPoly> beta;   // beta_ab, all pairs
    std::map<std::pair<int, int>, LambdaPoly> gamma;  // gamma_ab for a <= b
    LambdaPoly delta;

    explicit Quadratic(int nlambda) : delta(nlambda) {}

    // Symmetric-matrix accessors over all ordered pairs.
    LambdaPoly alpha_at(int a, int b, int nlambda) const { return sym_at(alpha, a, b, nlambda); }
    LambdaPoly gamma_at(int a, int b, int nlambda) const { return sym_at(gamma, a, b, nlambda); }
    LambdaPoly beta_at(int a, int b, int nlambda) const {
      auto it = beta.find({a, b});
      return it == beta.end() ? LambdaPoly::zero(nlambda) : it->second;
    }

   private:
    static LambdaPoly sym_at(const std::map<std::pair<int, int>, LambdaPoly>& m, int a, int b,
                             int nlambda) {
      auto it = m.find({std::min(a, b), std::max(a, b)});
      return it == m.end() ? LambdaPoly::zero(nlambda) : it->second;
    }
  };

  // Reads the alpha/beta/gamma/delta matrices back off the canonical term map.
  // The stored coefficient of d_a d_b (a < b) is alpha_ab, of d_a^2 is
  // alpha_aa / 2, of z_a d_b is beta_ab, of z_a z_b (a < b) is gamma_ab, of
  // z_a^2 is gamma_aa / 2, of 1 is delta. Throws if any term has another shape.
  Quadratic decompose_quadratic() const {
    Quadratic q(2 * g_);
    for (const auto& [m, c] : terms_) {
      int zt = m.z_total(), dt = m.d_total();
      if (zt == 0 && dt == 0) {
        q.delta += c;
      } else if (zt == 0 && dt == 2) {
        auto [a, b] = two_indices(m.d);
        q.alpha.emplace(std::make_pair(a, b), a == b ? c.scaled(Rational(2)) : c);
      } else if (zt == 1 && dt == 1) {
        q.beta.emplace(std::make_pair(one_index(m.z), one_index(m.d)), c);
      } else if (zt == 2 && dt == 0) {
        auto [a, b] = two_indices(m.z);
        q.gamma.emplace(std::make_pair(a, b), a == b ? c.scaled(Rational(2)) : c);
      } else {
        throw std::logic_error("WeylOperator: term is not of heat-operator shape");
      }
    }
    return q;
  }

 private:
  static int check_g(int g) {
    if (g < 1) throw std::invalid_argument("WeylOperator: genus must be >= 1");
    return g;
  }
  static WeylOperator gen(int g, int index, bool deriv) {
    WeylOperator w(check_g(g));
    if (index < 1 || index > 2 * g - 1 || index % 2 == 0)
      throw std::out_of_range("z/d index " + std::to_string(index) + " outside {1,3,...," +
                              std::to_string(2 * g - 1) + "}");
    ZMono m(g);
    (deriv ? m.d : m.z)[(index - 1) / 2] = 1;
    w.add_term(m, LambdaPoly::one(2 * g));
    return w;
  }
  void check_same(const WeylOperator& o) const {
    if (g_ != o.g_)
      throw std::invalid_argument("WeylOperator: mixed genera (" + std::to_string(g_) + " vs " +
                                  std::to_string(o.g_) + ")");
  }

  int one_index(const std::vector<int>& e) const {
    for (int p = 0; p < g_; ++p)
      if (e[p] == 1) return 2 * p + 1;
    throw std::logic_error("WeylOperator: bad exponent vector");
  }
  std::pair<int, int> two_indices(const std::vector<int>& e) const {
    std::vector<int> idx;
    for (int p = 0; p < g_; ++p) {
      if (e[p] == 1) idx.push_back(2 * p + 1);
      if (e[p] == 2) { idx.push_back(2 * p + 1); idx.push_back(2 * p + 1); }
    }
    if (idx.size() != 2) throw std::logic_error("WeylOperator: bad exponent vector");
    return {idx[0], idx[1]};
  }

  // *this += (ca z^{ma}) * (cb z^{mb}) with normal ordering of d^b z^c.
  void accumulate_product(const ZMono& ma, const LambdaPoly& ca, const ZMono& mb,
                          const LambdaPoly& cb) {
    LambdaPoly coef = ca * cb;
    // Recurse over variables, accumulating the contraction choice k_p per
    // variable p with scalar C(b_p, k) C(c_p, k) k!.
    ZMono m(g_);
    walk(0, ma, mb, Rational(1), m, coef);
  }

  void walk(int p, const ZMono& ma, const ZMono& mb, Rational scale, ZMono& m,
            const LambdaPoly& coef) {
    if (p == g_) {
      add_term(m, coef.scaled(scale));
      return;
    }
    int n = ma.d[p];  // d exponent meeting...
    int c = mb.z[p];  // ...this z exponent
    int kmax = std::min(n, c);
    for (int k = 0; k <= kmax; ++k) {
      m.z[p] = ma.z[p] + c - k;
      m.d[p] = n - k + mb.d[p];
      walk(p + 1, ma, mb, scale * rat_binomial(n, k) * rat_binomial(c, k) * rat_factorial(k), m,
           coef);
    }
    m.z[p] = 0;
    m.d[p] = 0;
  }

  int g_;
  TermMap terms_;
};

}  // namespace heatalg

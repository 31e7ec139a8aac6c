#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "heatalg/derivations.hpp"
#include "heatalg/generators.hpp"
#include "heatalg/schrodinger.hpp"
#include "heatalg/text.hpp"

namespace heatalg {

// The bracket lies outside the P-span of the basis fields.
struct NotInSpanError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// The expansion exists but is not unique (the basis is P-dependent).
struct BasisDegenerateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// All lambda monomials of the given weight (weight of lambda_{2p+4} is 2p+4).
inline std::vector<LambdaMono> lambda_monomials_of_weight(int nlambda, int w) {
  std::vector<LambdaMono> out;
  if (w < 0) return out;
  LambdaMono cur(nlambda, 0);
  // Depth-first over variable positions; weights are all >= 4, so recursion
  // depth and branching stay small at desk scale.
  auto rec = [&](auto&& self, int pos, int remaining) -> void {
    if (remaining == 0) {
      out.push_back(cur);
      return;
    }
    if (pos == nlambda) return;
    int vw = 2 * pos + 4;
    for (int e = 0; e * vw <= remaining; ++e) {
      cur[pos] = e;
      self(self, pos + 1, remaining - e * vw);
    }
    cur[pos] = 0;
  };
  rec(rec, 0, w);
  return out;
}

namespace detail {

struct SparseRow {
  std::map<int, Rational> a;
  Rational b;
};

// r -= f * p, erasing cancelled entries.
inline void row_axpy(SparseRow& r, const SparseRow& p, const Rational& f) {
  for (const auto& [c, v] : p.a) {
    auto it = r.a.find(c);
    if (it == r.a.end()) {
      Rational nv = -(f * v);
      if (!nv.is_zero()) r.a.emplace(c, nv);
    } else {
      it->second -= f * v;
      if (it->second.is_zero()) r.a.erase(it);
    }
  }
  r.b -= f * p.b;
}

struct SparseSolution {
  bool inconsistent = false;
  bool underdetermined = false;
  std::vector<Rational> x;
};

// Exact Gauss-Jordan over Q on sparse rows; unknowns are 0..nunknowns-1.
inline SparseSolution solve_sparse(int nunknowns, std::vector<SparseRow> rows) {
  SparseSolution sol;
  std::map<int, SparseRow> pivots;
  for (auto& row : rows) {
    while (true) {
      if (row.a.empty()) {
        if (!row.b.is_zero()) {
          sol.inconsistent = true;
          return sol;
        }
        break;
      }
      int c = row.a.begin()->first;
      auto it = pivots.find(c);
      if (it == pivots.end()) {
        Rational inv = row.a.begin()->second.inv();
        for (auto& [cc, vv] : row.a) vv *= inv;
        row.b *= inv;
        pivots.emplace(c, std::move(row));
        break;
      }
      Rational f = row.a.begin()->second;  // copy: row_axpy erases this entry
      row_axpy(row, it->second, f);
    }
  }
  // Back-substitution to reduced form.
  for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
    for (auto jt = pivots.begin(); jt != pivots.end(); ++jt) {
      if (jt->first == it->first) break;
      auto ft = jt->second.a.find(it->first);
      if (ft != jt->second.a.end()) {
        Rational f = ft->second;  // copy: row_axpy erases this entry
        row_axpy(jt->second, it->second, f);
      }
    }
  }
  sol.x.assign(nunknowns, Rational(0));
  for (int u = 0; u < nunknowns; ++u) {
    auto it = pivots.find(u);
    if (it == pivots.end()) {
      sol.underdetermined = true;
      return sol;
    }
    sol.x[u] = it->second.b;
  }
  return sol;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Expands a vector field over the generator basis L_0, ..., L_{4g-2} with
// polynomial coefficients: v = sum_k c_k(lambda) L_{2k}. Works weight
// component by weight component with a polynomial ansatz for each c_k and an
// exact sparse solve, then re-verifies the expansion by direct arithmetic.
// ---------------------------------------------------------------------------
inline std::map<int, LambdaPoly> express_in_l_basis(const GenusContext& ctx,
                                                    const LambdaVectorField& v) {
  const int n = ctx.nlambda();
  const int nk = 2 * ctx.g;  // k = 0..2g-1
  std::vector<LambdaVectorField> basis = build_l_family(ctx);

  std::map<int, LambdaPoly> out;
  for (int k = 0; k < nk; ++k) out.emplace(k, LambdaPoly::zero(n));

  for (int w : v.weights()) {
    LambdaVectorField vw = v.weight_component(w);
    // Unknowns: coefficient of each lambda monomial mu of weight w - 2k in c_k.
    struct Unknown {
      int k;
      LambdaMono mu;
    };
    std::vector<Unknown> unknowns;
    for (int k = 0; k < nk; ++k)
      for (const auto& mu : lambda_monomials_of_weight(n, w - 2 * k))
        unknowns.push_back({k, mu});

    // Equations keyed by (target lambda index, lambda monomial).
    std::map<std::pair<int, LambdaMono>, detail::SparseRow> rows;
    for (std::size_t u = 0; u < unknowns.size(); ++u) {
      LambdaPoly mu_poly(n);
      mu_poly.add_term(unknowns[u].mu, Rational(1));
      for (const auto& [m, coef] : basis[unknowns[u].k].terms()) {
        LambdaPoly prod = coef * mu_poly;
        for (const auto& [nu, c] : prod.terms()) {
          auto& row = rows[{m, nu}];
          auto it = row.a.find(static_cast<int>(u));
          if (it == row.a.end())
            row.a.emplace(static_cast<int>(u), c);
          else {
            it->second += c;
            if (it->second.is_zero()) row.a.erase(it);
          }
        }
      }
    }
    for (const auto& [m, coef] : vw.terms())
      for (const auto& [nu, c] : coef.terms()) rows[{m, nu}].b = c;

    std::vector<detail::SparseRow> rowvec;
    rowvec.reserve(rows.size());
    for (auto& [key, row] : rows) rowvec.push_back(std::move(row));

    auto sol = detail::solve_sparse(static_cast<int>(unknowns.size()), std::move(rowvec));
    if (sol.inconsistent)
      throw NotInSpanError("express_in_l_basis: field is not in the P-span of the L basis");
    if (sol.underdetermined)
      throw BasisDegenerateError("express_in_l_basis: expansion is not unique over P");
    for (std::size_t u = 0; u < unknowns.size(); ++u)
      out.at(unknowns[u].k).add_term(unknowns[u].mu, sol.x[u]);
  }

  // Direct re-verification, independent of the solver.
  LambdaVectorField acc(n);
  for (int k = 0; k < nk; ++k) acc += out.at(k) * basis[k];
  if (!(acc == v))
    throw std::logic_error("express_in_l_basis: reconstruction check failed");
  return out;
}

// Structure polynomials of the bracket [L_{2i}, L_{2j}] over the basis.
inline std::map<int, LambdaPoly> structure_coefficients(const GenusContext& ctx, int i, int j) {
  auto basis = build_l_family(ctx);
  return express_in_l_basis(ctx, LambdaVectorField::bracket(basis.at(i), basis.at(j)));
}

// ---------------------------------------------------------------------------
// Check records: every verification emits one record per identity instance.
// status is "pass"/"fail" for identity checks; golden comparisons use
// "exact", "pass_mod_documented_sign", "typo_candidate", "fail"; summary-type
// records use "reported".
// ---------------------------------------------------------------------------
struct CheckRecord {
  std::string check;
  int genus = 0;
  int i = -1;
  int j = -1;
  std::string status;
  std::string note;

  bool ok() const { return status != "fail"; }
};

// Euler relations: [L_0, lambda_{2m}] = 2m lambda_{2m}, [L_0, L_{2k}] = 2k L_{2k}.
inline std::vector<CheckRecord> check_euler(const GenusContext& ctx) {
  std::vector<CheckRecord> recs;
  const int n = ctx.nlambda();
  auto Ls = build_l_family(ctx);
  for (int idx = 4; idx <= 2 * n + 2; idx += 2) {
    LambdaPoly lam = LambdaPoly::variable(n, idx);
    bool ok = Ls[0].apply(lam) == lam.scaled(Rational(idx));
    recs.push_back({"euler-lambda", ctx.g, idx, -1, ok ? "pass" : "fail", ""});
  }
  for (int k = 0; k < 2 * ctx.g; ++k) {
    bool ok = LambdaVectorField::bracket(Ls[0], Ls[k]) == Ls[k].scaled(Rational(2 * k));
    recs.push_back({"euler", ctx.g, k, -1, ok ? "pass" : "fail", ""});
  }
  return recs;
}

// Bracket recursion with L_2:
//   [L_2, L_{2k}] = 2(k-1) L_{2k+2} + (4(2g-k)/(2g+1)) (lambda_{2k+2} L_0 - lambda_4 L_{2k-2})
// asserted directly for k = 0..2g-2 (indices outside the frame read as zero:
// lambda_2 = 0 and L_{-2} = 0 cover k = 0). The top bracket [L_2, L_{4g-2}]
// leaves the stated range, so it is only checked to expand over the basis.
inline std::vector<CheckRecord> check_lemma33(const GenusContext& ctx) {
  std::vector<CheckRecord> recs;
  const int g = ctx.g;
  const int n = ctx.nlambda();
  auto Ls = build_l_family(ctx);
  for (int k = 0; k <= 2 * g - 2; ++k) {
    LambdaVectorField lhs = LambdaVectorField::bracket(Ls[1], Ls[k]);
    LambdaVectorField rhs = Ls[k + 1].scaled(Rational(2 * (k - 1)));
    LambdaVectorField corr = LambdaPoly::lambda_atom(n, 2 * k + 2) * Ls[0];
    if (k >= 1) corr -= LambdaPoly::lambda_atom(n, 4) * Ls[k - 1];
    rhs += corr.scaled(Rational(4 * (2 * g - k), 2 * g + 1));
    bool ok = lhs == rhs;
    recs.push_back({"lemma33", g, k, -1, ok ? "pass" : "fail", ""});
  }
  {
    CheckRecord r{"lemma33-top", g, 2 * g - 1, -1, "pass",
                  "bracket expands over the generator basis"};
    try {
      express_in_l_basis(ctx, LambdaVectorField::bracket(Ls[1], Ls[2 * g - 1]));
    } catch (const std::exception& e) {
      r.status = "fail";
      r.note = e.what();
    }
    recs.push_back(r);
  }
  return recs;
}

// Q-structure condition: [Q_{2i}, Q_{2j}] = sum_k c^{2k}_{2i,2j} Q_{2k} as an
// exact operator identity, with the c's taken from the L-side expansion.
inline std::vector<CheckRecord> check_q_structure(const GenusContext& ctx,
                                                  const std::vector<SchrodingerOperator>& q) {
  std::vector<CheckRecord> recs;
  const int n = ctx.nlambda();
  const int g = ctx.g;
  for (int i = 0; i < 2 * g; ++i)
    for (int j = i + 1; j < 2 * g; ++j) {
      CheckRecord r{"q-structure", g, i, j, "pass", ""};
      try {
        SchrodingerOperator lhs = q_commutator(q[i], q[j]);
        auto cs = express_in_l_basis(ctx, lhs.l);
        SchrodingerOperator rhs{lhs.weight, LambdaVectorField::zero(n), WeylOperator::zero(g)};
        for (const auto& [k, ck] : cs) {
          if (ck.is_zero()) continue;
          rhs = rhs + q[k].scaled(ck, lhs.weight - 2 * k);
        }
        if (!(lhs == rhs)) {
          r.status = "fail";
          r.note = "operator identity violated";
        }
      } catch (const std::exception& e) {
        r.status = "fail";
        r.note = e.what();
      }
      recs.push_back(r);
    }
  return recs;
}

// Coefficient-shape facts: alpha is the indicator of a+b = 2k with the stated
// constant delta, beta has lambda-degree <= 1, gamma <= 2.
inline std::vector<CheckRecord> check_shapes(const GenusContext& ctx, const HFamily& fam) {
  std::vector<CheckRecord> recs;
  const int g = ctx.g;
  const int n = ctx.nlambda();
  for (int k = 0; k < 2 * g; ++k) {
    CheckRecord r21{"lemma21", g, k, -1, "pass", ""};
    try {
      auto q = fam.h.at(k).decompose_quadratic();
      AlphaDelta ad = alpha_delta(ctx, k);
      for (int a = 1; a <= 2 * g - 1 && r21.ok(); a += 2)
        for (int b = a; b <= 2 * g - 1; b += 2) {
          Rational want(a + b == 2 * k ? 1 : 0);
          if (q.alpha_at(a, b, n) != LambdaPoly::constant(n, want)) {
            r21.status = "fail";
            r21.note = "alpha_" + std::to_string(a) + "_" + std::to_string(b) +
                       " is not the indicator value";
            break;
          }
        }
      if (r21.ok() && q.delta != ad.delta) {
        r21.status = "fail";
        r21.note = "delta mismatch: got " + render(q.delta) + ", want " + render(ad.delta);
      }
    } catch (const std::exception& e) {
      r21.status = "fail";
      r21.note = e.what();
    }
    recs.push_back(r21);

    CheckRecord r32{"lemma32", g, k, -1, "pass", ""};
    try {
      auto q = fam.h.at(k).decompose_quadratic();
      for (const auto& [ab, beta] : q.beta)
        if (beta.degree() > 1) {
          r32.status = "fail";
          r32.note = "beta lambda-degree exceeds 1";
        }
      for (const auto& [ab, gamma] : q.gamma)
        if (gamma.degree() > 2) {
          r32.status = "fail";
          r32.note = "gamma lambda-degree exceeds 2";
        }
    } catch (const std::exception& e) {
      r32.status = "fail";
      r32.note = e.what();
    }
    recs.push_back(r32);
  }
  return recs;
}

// Weight homogeneity of everything we generate.
inline std::vector<CheckRecord> check_grading(const GenusContext& ctx, const HFamily& fam) {
  std::vector<CheckRecord> recs;
  const int g = ctx.g;
  auto note_fail = [&](const std::string& what, int i, int j, bool ok) {
    recs.push_back({"grading", g, i, j, ok ? "pass" : "fail", what});
  };
  for (int k = 1; k <= 2 * g; ++k)
    for (int m = k; m <= 2 * g; ++m)
      note_fail("v_" + std::to_string(2 * k) + "_" + std::to_string(2 * m), k, m,
                v_entry(ctx, k, m).is_homogeneous_of_weight(2 * (k + m)));
  for (int k = 0; k < 2 * g; ++k) {
    note_fail("L_" + std::to_string(2 * k), k, -1,
              build_L(ctx, k).is_homogeneous_of_weight(2 * k));
    note_fail("H_" + std::to_string(2 * k), k, -1,
              fam.h.at(k).is_homogeneous_of_weight(2 * k));
    auto sl = build_script_l(ctx, k, fam.h.at(k));
    note_fail("scriptL_" + std::to_string(2 * k), k, -1,
              sl.zd.is_homogeneous_of_weight(2 * k) && sl.l.is_homogeneous_of_weight(2 * k));
    for (int j = 1; j <= 2 * g - 1; j += 2)
      note_fail("w_" + std::to_string(2 * k) + "_" + std::to_string(j), k, j,
                compute_w(ctx, k, j, fam.h.at(k)).is_homogeneous_of_weight(2 * k + j));
  }
  return recs;
}

// ---------------------------------------------------------------------------
// Golden fixtures: verbatim transcriptions of the published tables, stored as
// blocks "[genus N, label]" followed by expression lines in the shared text
// grammar. An optional overlay file records adjudicated discrepancies:
//   relabel <from> <to> :: <evidence>
//   term <label> :: <printed> :: <corrected> :: <evidence>
// Comparisons classify each entry as exact, matching after the documented
// global sign question on third-order psi terms, a documented typo candidate
// (the overlay corrections were needed), or a fail.
// ---------------------------------------------------------------------------

struct FixtureBlock {
  std::string label;
  std::string body;
};
struct FixtureRelabel {
  std::string from, to, note;
};
struct FixtureTermEdit {
  std::string label, printed, corrected, note;
};

struct FixtureSet {
  int genus = 0;
  bool has_h = false, has_script_l = false, has_w = false;
  std::vector<FixtureBlock> blocks;
  std::vector<FixtureRelabel> relabels;
  std::vector<FixtureTermEdit> term_edits;

  // Effective label of a block after relabel overlays; note set when applied.
  std::string effective_label(const std::string& raw, std::string* note = nullptr) const {
    for (const auto& r : relabels)
      if (r.from == raw) {
        if (note) *note = r.note;
        return r.to;
      }
    return raw;
  }

  const FixtureBlock* find(const std::string& wanted, std::string* relabel_note = nullptr) const {
    for (const auto& b : blocks) {
      std::string note;
      if (effective_label(b.label, &note) == wanted) {
        if (relabel_note) *relabel_note = note;
        return &b;
      }
    }
    return nullptr;
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

}  // namespace detail

inline void parse_fixture_blocks(const std::string& text, int expect_genus,
                                 std::vector<FixtureBlock>& out) {
  std::istringstream in(text);
  std::string line;
  FixtureBlock cur;
  bool open = false;
  auto flush = [&] {
    if (open) {
      cur.body = detail::trim(cur.body);
      out.push_back(cur);
    }
    cur = FixtureBlock{};
    open = false;
  };
  while (std::getline(in, line)) {
    std::string t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t[0] == '[') {
      flush();
      std::size_t close = t.find(']');
      std::size_t comma = t.find(',');
      if (close == std::string::npos || comma == std::string::npos || comma > close)
        throw std::invalid_argument("fixture: bad block header '" + t + "'");
      std::string gpart = detail::trim(t.substr(1, comma - 1));
      if (gpart.rfind("genus ", 0) != 0)
        throw std::invalid_argument("fixture: bad block header '" + t + "'");
      int bg = std::stoi(gpart.substr(6));
      if (bg != expect_genus)
        throw std::invalid_argument("fixture: block genus " + std::to_string(bg) +
                                    " in a genus " + std::to_string(expect_genus) + " file");
      cur.label = detail::trim(t.substr(comma + 1, close - comma - 1));
      open = true;
    } else {
      if (!open) throw std::invalid_argument("fixture: expression before any block header");
      cur.body += " " + t;
    }
  }
  flush();
}

inline void parse_overlay(const std::string& text, FixtureSet& fx) {
  std::istringstream in(text);
  std::string line;
  auto split_on = [](const std::string& s, const std::string& sep) {
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (true) {
      std::size_t nxt = s.find(sep, pos);
      if (nxt == std::string::npos) {
        parts.push_back(detail::trim(s.substr(pos)));
        break;
      }
      parts.push_back(detail::trim(s.substr(pos, nxt - pos)));
      pos = nxt + sep.size();
    }
    return parts;
  };
  while (std::getline(in, line)) {
    std::string t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.rfind("relabel ", 0) == 0) {
      auto parts = split_on(t.substr(8), "::");
      if (parts.size() != 2)
        throw std::invalid_argument("overlay: bad relabel line '" + t + "'");
      std::istringstream names(parts[0]);
      FixtureRelabel r;
      if (!(names >> r.from >> r.to))
        throw std::invalid_argument("overlay: bad relabel line '" + t + "'");
      r.note = parts[1];
      fx.relabels.push_back(r);
    } else if (t.rfind("term ", 0) == 0) {
      auto parts = split_on(t.substr(5), "::");
      if (parts.size() != 4)
        throw std::invalid_argument("overlay: bad term line '" + t + "'");
      fx.term_edits.push_back({parts[0], parts[1], parts[2], parts[3]});
    } else {
      throw std::invalid_argument("overlay: unknown directive '" + t + "'");
    }
  }
}

inline FixtureSet load_fixtures(const std::string& dir, int genus) {
  FixtureSet fx;
  fx.genus = genus;
  std::string base = dir + "/g" + std::to_string(genus) + "/";
  std::string text;
  if (detail::read_file(base + "H.txt", text)) {
    fx.has_h = true;
    parse_fixture_blocks(text, genus, fx.blocks);
  }
  if (detail::read_file(base + "scriptL.txt", text)) {
    fx.has_script_l = true;
    parse_fixture_blocks(text, genus, fx.blocks);
  }
  if (detail::read_file(base + "w.txt", text)) {
    fx.has_w = true;
    parse_fixture_blocks(text, genus, fx.blocks);
  }
  if (detail::read_file(base + "overlay.txt", text)) parse_overlay(text, fx);
  if (!fx.has_h)
    throw std::runtime_error("fixtures not found under " + base);
  return fx;
}

namespace detail {

// Applies the overlay term edits for one label; reports whether anything was
// edited and collects the overlay evidence notes.
inline std::string apply_term_edits(const FixtureSet& fx, const std::string& label,
                                    std::string body, bool& edited, std::string& notes) {
  for (const auto& e : fx.term_edits) {
    if (e.label != label) continue;
    std::size_t pos = body.find(e.printed);
    if (pos == std::string::npos)
      throw std::invalid_argument("overlay: printed text '" + e.printed +
                                  "' not found in fixture " + label);
    body = body.substr(0, pos) + e.corrected + body.substr(pos + e.printed.size());
    edited = true;
    if (!notes.empty()) notes += "; ";
    notes += e.note;
  }
  return body;
}

}  // namespace detail

// Negates every term carrying a psi symbol with two or more indices; the
// documented sign question flips exactly these terms relative to the tables.
inline PsiPoly flip_high_order_psi(const PsiPoly& p) {
  PsiPoly r(p.genus());
  for (const auto& [m, c] : p.terms()) r.add_term(m, m.max_psi_size() >= 2 ? -c : c);
  return r;
}

inline std::vector<CheckRecord> golden_compare_h(const GenusContext& ctx, const FixtureSet& fx,
                                                 const HFamily& fam) {
  std::vector<CheckRecord> recs;
  const int g = ctx.g;
  for (int k = 0; k < 2 * g; ++k) {
    std::string label = "H_" + std::to_string(2 * k);
    CheckRecord r{"golden-h", g, k, -1, "exact", ""};
    std::string relabel_note;
    const FixtureBlock* b = fx.find(label, &relabel_note);
    if (!b) {
      r.status = "fail";
      r.note = "missing fixture " + label;
      recs.push_back(r);
      continue;
    }
    try {
      bool edited = false;
      std::string notes;
      std::string body = detail::apply_term_edits(fx, b->label, b->body, edited, notes);
      WeylOperator parsed = parse_weyl(body, g);
      if (parsed == fam.h.at(k)) {
        if (edited || !relabel_note.empty()) {
          r.status = "typo_candidate";
          r.note = notes.empty() ? relabel_note : notes;
        }
      } else {
        r.status = "fail";
        r.note = "mismatch: generated " + render(fam.h.at(k)) + " vs fixture " + render(parsed);
      }
    } catch (const std::exception& e) {
      r.status = "fail";
      r.note = e.what();
    }
    recs.push_back(r);
  }
  return recs;
}

inline std::vector<CheckRecord> golden_compare_script_l(const GenusContext& ctx,
                                                        const FixtureSet& fx,
                                                        const HFamily& fam) {
  std::vector<CheckRecord> recs;
  const int g = ctx.g;
  for (int k = 0; k < 2 * g; ++k) {
    std::string label = "scriptL_" + std::to_string(2 * k);
    CheckRecord r{"golden-script-l", g, k, -1, "exact", ""};
    std::string relabel_note;
    const FixtureBlock* b = fx.find(label, &relabel_note);
    if (!b) {
      r.status = "fail";
      r.note = "missing fixture " + label;
      recs.push_back(r);
      continue;
    }
    try {
      bool edited = false;
      std::string notes;
      std::string body = detail::apply_term_edits(fx, b->label, b->body, edited, notes);
      DerivationOperator parsed = parse_script_l(body, ctx);
      DerivationOperator built = build_script_l(ctx, k, fam.h.at(k));
      if (parsed == built) {
        if (edited || !relabel_note.empty()) {
          r.status = "typo_candidate";
          r.note = notes.empty() ? relabel_note : notes;
        }
      } else {
        r.status = "fail";
        r.note = "mismatch: generated " + render(built) + " vs fixture " + render(parsed);
      }
    } catch (const std::exception& e) {
      r.status = "fail";
      r.note = e.what();
    }
    recs.push_back(r);
  }
  return recs;
}

inline std::vector<CheckRecord> golden_compare_w(const GenusContext& ctx, const FixtureSet& fx,
                                                 const HFamily& fam) {
  std::vector<CheckRecord> recs;
  const int g = ctx.g;
  bool any_sign_flip = false;
  for (int k = 0; k < 2 * g; ++k)
    for (int j = 1; j <= 2 * g - 1; j += 2) {
      std::string label = "w_" + std::to_string(2 * k) + "_" + std::to_string(j);
      CheckRecord r{"golden-w", g, k, j, "exact", ""};
      std::string relabel_note;
      const FixtureBlock* b = fx.find(label, &relabel_note);
      if (!b) {
        r.status = "fail";
        r.note = "missing fixture " + label;
        recs.push_back(r);
        continue;
      }
      try {
        bool edited = false;
        std::string notes = relabel_note;
        std::string body = detail::apply_term_edits(fx, b->label, b->body, edited, notes);
        PsiPoly parsed = parse_psi_poly(body, g);
        PsiPoly computed = compute_w(ctx, k, j, fam.h.at(k));
        bool typo = edited || !relabel_note.empty();
        if (parsed == computed) {
          if (typo) {
            r.status = "typo_candidate";
            r.note = notes;
          }
        } else if (flip_high_order_psi(parsed) == computed) {
          any_sign_flip = true;
          if (typo) {
            r.status = "typo_candidate";
            r.note = notes + (notes.empty() ? "" : "; ") +
                     "matches after the documented third-order psi sign flip";
          } else {
            r.status = "pass_mod_documented_sign";
            r.note = "matches after the documented third-order psi sign flip";
          }
        } else {
          r.status = "fail";
          r.note =
              "mismatch: computed " + render(computed) + " vs fixture " + render(parsed);
        }
      } catch (const std::exception& e) {
        r.status = "fail";
        r.note = e.what();
      }
      recs.push_back(r);
    }
  if (any_sign_flip)
    recs.push_back({"w-sign-question", g, -1, -1, "reported",
                    "every third-order psi term the derivation produces carries the opposite "
                    "sign to the printed tables; the derivation and its independent closed "
                    "form agree with each other"});
  return recs;
}

}  // namespace heatalg

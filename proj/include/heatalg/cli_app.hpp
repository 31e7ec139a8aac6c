#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "heatalg/json_io.hpp"
#include "heatalg/lie_verify.hpp"

// Command-line front end. run_cli() takes the argument vector without the
// program name, writes reports to `out` (or --out FILE) and diagnostics to
// `err`, and returns the process exit code: 0 success, 1 verification
// failure or runtime error, 2 usage error.

namespace heatalg {

namespace cli_detail {

struct Options {
  int genus = 1;
  std::string format = "text";
  std::string only;
  std::string out;
  std::string fixtures = "fixtures";
};

// "a + b" for two rendered term streams, fusing the sign of b's first term.
inline std::string join_sum(const std::string& a, const std::string& b) {
  if (a.empty() || a == "0") return b.empty() ? "0" : b;
  if (b.empty() || b == "0") return a;
  if (b[0] == '-') return a + " - " + b.substr(1);
  return a + " + " + b;
}

inline std::string render_q(const SchrodingerOperator& q) {
  return join_sum(render(q.l), render(q.h.scaled(Rational(-1))));
}

// Parses a comma list of printed (even) subscripts into k-positions for the
// given genus; an empty list selects everything.
inline bool parse_index_list(const std::string& s, const GenusContext& ctx, std::vector<int>& ks,
                             std::string& msg) {
  ks.clear();
  if (s.empty()) {
    for (int k = 0; k < 2 * ctx.g; ++k) ks.push_back(k);
    return true;
  }
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t nxt = s.find(',', pos);
    std::string tok = s.substr(pos, nxt == std::string::npos ? std::string::npos : nxt - pos);
    std::size_t b = tok.find_first_not_of(" \t");
    std::size_t e = tok.find_last_not_of(" \t");
    tok = b == std::string::npos ? "" : tok.substr(b, e - b + 1);
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) {
      msg = "--only expects a comma-separated list of even indices, got '" + s + "'";
      return false;
    }
    int v = std::stoi(tok);
    if (v % 2 != 0 || v > 4 * ctx.g - 2) {
      msg = "index " + tok + " is not an even subscript in 0.." + std::to_string(4 * ctx.g - 2);
      return false;
    }
    ks.push_back(v / 2);
    if (nxt == std::string::npos) break;
    pos = nxt + 1;
  }
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  return true;
}

// Maps each record's check name onto the --only group vocabulary.
inline std::string group_of(const std::string& check) {
  if (check == "euler-lambda") return "euler";
  if (check == "lemma33-top") return "lemma33";
  if (check.rfind("golden", 0) == 0 || check == "w-sign-question") return "golden";
  return check;
}

inline nlohmann::json record_json(const CheckRecord& r) {
  return {{"check", r.check}, {"genus", r.genus}, {"i", r.i},
          {"j", r.j},         {"status", r.status}, {"note", r.note}};
}

// Human-readable label of a golden record.
inline std::string record_label(const CheckRecord& r) {
  if (r.check == "golden-h") return "H_" + std::to_string(2 * r.i);
  if (r.check == "golden-script-l") return "scriptL_" + std::to_string(2 * r.i);
  if (r.check == "golden-w")
    return "w_" + std::to_string(2 * r.i) + "_" + std::to_string(r.j);
  if (r.check == "w-sign-question") return "(summary)";
  std::string s = "i=" + std::to_string(r.i);
  if (r.j >= 0) s += " j=" + std::to_string(r.j);
  return s;
}

inline int emit_verify_report(const std::vector<CheckRecord>& recs,
                              const std::vector<std::string>& group_order, int genus, bool json,
                              std::ostream& out) {
  int failed = 0;
  for (const auto& r : recs)
    if (!r.ok()) ++failed;
  if (json) {
    for (const auto& r : recs) out << record_json(r).dump() << "\n";
    nlohmann::json summary = {{"summary", true},
                              {"genus", genus},
                              {"records", recs.size()},
                              {"failed", failed},
                              {"result", failed == 0 ? "pass" : "fail"}};
    out << summary.dump() << "\n";
  } else {
    for (const auto& name : group_order) {
      int total = 0, bad = 0;
      std::map<std::string, int> special;
      for (const auto& r : recs) {
        if (group_of(r.check) != name) continue;
        ++total;
        if (!r.ok()) ++bad;
        if (r.status != "pass" && r.status != "exact" && r.status != "fail")
          ++special[r.status];
      }
      if (total == 0) continue;
      out << name << ": " << (bad == 0 ? "pass" : "FAIL") << " (" << total << " checks";
      for (const auto& [st, n] : special) out << ", " << n << " " << st;
      out << ")\n";
      for (const auto& r : recs) {
        if (group_of(r.check) != name) continue;
        if (!r.ok())
          out << "  FAIL " << r.check << " " << record_label(r) << ": " << r.note << "\n";
        else if (r.status == "typo_candidate" || r.status == "reported")
          out << "  note " << record_label(r) << ": " << r.note << "\n";
      }
    }
    out << "RESULT: " << (failed == 0 ? "pass" : "fail") << "\n";
  }
  return failed == 0 ? 0 : 1;
}

inline int cmd_gen(const Options& o, std::ostream& out, std::ostream& err) {
  GenusContext ctx{o.genus};
  std::vector<int> ks;
  std::string msg;
  if (!parse_index_list(o.only, ctx, ks, msg)) {
    err << "error: " << msg << "\n";
    return 2;
  }
  HFamily fam = h_family_generating(ctx);
  bool json = o.format == "json";
  for (int k : ks) {
    SchrodingerOperator q = build_Q(ctx, k, fam.h.at(k));
    if (json) {
      nlohmann::json line = {{"index", 2 * k},
                             {"L", to_json(q.l)},
                             {"H", to_json(fam.h.at(k))},
                             {"Q", to_json(q)}};
      out << line.dump() << "\n";
    } else {
      std::string n = std::to_string(2 * k);
      out << "L_" << n << " = " << render(q.l) << "\n";
      out << "H_" << n << " = " << render(fam.h.at(k)) << "\n";
      out << "Q_" << n << " = " << render_q(q) << "\n";
    }
  }
  return 0;
}

inline int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  GenusContext ctx{o.genus};
  static const std::vector<std::string> all_groups = {
      "dual", "euler", "lemma33", "q-structure", "lemma21", "lemma32", "grading", "golden"};
  std::set<std::string> want(all_groups.begin(), all_groups.end());
  if (!o.only.empty()) {
    want.clear();
    std::size_t pos = 0;
    while (pos <= o.only.size()) {
      std::size_t nxt = o.only.find(',', pos);
      std::string tok =
          o.only.substr(pos, nxt == std::string::npos ? std::string::npos : nxt - pos);
      if (std::find(all_groups.begin(), all_groups.end(), tok) == all_groups.end()) {
        err << "error: unknown check '" << tok << "'; expected one of";
        for (const auto& n : all_groups) err << " " << n;
        err << "\n";
        return 2;
      }
      want.insert(tok);
      if (nxt == std::string::npos) break;
      pos = nxt + 1;
    }
  }

  HFamily fam = h_family_generating(ctx);
  std::vector<CheckRecord> recs;
  auto take = [&](std::vector<CheckRecord> v) {
    for (auto& r : v)
      if (want.count(cli_detail::group_of(r.check))) recs.push_back(std::move(r));
  };
  if (want.count("dual")) {
    HFamily rec_fam = h_family_recurrence(ctx);
    for (int k = 0; k < 2 * ctx.g; ++k) {
      bool ok = rec_fam.h.at(k) == fam.h.at(k);
      recs.push_back({"dual", ctx.g, k, -1, ok ? "pass" : "fail",
                      ok ? "" : "generating-function and recurrence constructions disagree"});
    }
  }
  if (want.count("euler")) take(check_euler(ctx));
  if (want.count("lemma33")) take(check_lemma33(ctx));
  if (want.count("q-structure")) {
    std::vector<SchrodingerOperator> q;
    for (int k = 0; k < 2 * ctx.g; ++k) q.push_back(build_Q(ctx, k, fam.h.at(k)));
    take(check_q_structure(ctx, q));
  }
  if (want.count("lemma21") || want.count("lemma32")) take(check_shapes(ctx, fam));
  if (want.count("grading")) take(check_grading(ctx, fam));
  if (want.count("golden") && ctx.g <= 4) {
    try {
      FixtureSet fx = load_fixtures(o.fixtures, ctx.g);
      take(golden_compare_h(ctx, fx, fam));
      if (fx.has_script_l) take(golden_compare_script_l(ctx, fx, fam));
      if (fx.has_w) take(golden_compare_w(ctx, fx, fam));
    } catch (const std::exception& e) {
      recs.push_back({"golden-h", ctx.g, -1, -1, "fail", e.what()});
    }
  }
  return emit_verify_report(recs, all_groups, ctx.g, o.format == "json", out);
}

inline int cmd_bracket(const Options& o, std::ostream& out, std::ostream& err) {
  GenusContext ctx{o.genus};
  std::vector<std::pair<int, int>> pairs;
  if (o.only.empty()) {
    for (int i = 0; i < 2 * ctx.g; ++i)
      for (int j = i + 1; j < 2 * ctx.g; ++j) pairs.emplace_back(i, j);
  } else {
    std::vector<int> ks;
    std::string msg;
    if (!parse_index_list(o.only, ctx, ks, msg)) {
      err << "error: " << msg << "\n";
      return 2;
    }
    if (ks.size() != 2) {
      err << "error: bracket --only expects exactly two distinct even indices\n";
      return 2;
    }
    pairs.emplace_back(ks[0], ks[1]);
  }
  auto basis = build_l_family(ctx);
  bool json = o.format == "json";
  for (auto [i, j] : pairs) {
    LambdaVectorField br = LambdaVectorField::bracket(basis[i], basis[j]);
    auto cs = express_in_l_basis(ctx, br);
    if (json) {
      nlohmann::json expansion = nlohmann::json::array();
      for (const auto& [k, c] : cs)
        if (!c.is_zero()) expansion.push_back({{"index", 2 * k}, {"coef", to_json(c)}});
      nlohmann::json line = {
          {"i", 2 * i}, {"j", 2 * j}, {"field", to_json(br)}, {"expansion", expansion}};
      out << line.dump() << "\n";
    } else {
      out << "[L_" << 2 * i << ", L_" << 2 * j << "] = " << render(br) << "\n";
      detail::TermStream ts;
      for (const auto& [k, c] : cs)
        detail::add_poly_coeff_term(ts, c, "Q_" + std::to_string(2 * k));
      out << "[Q_" << 2 * i << ", Q_" << 2 * j << "] = " << ts.str() << "\n";
    }
  }
  return 0;
}

inline int cmd_derive(const Options& o, std::ostream& out, std::ostream& err) {
  GenusContext ctx{o.genus};
  std::vector<int> ks;
  std::string msg;
  if (!parse_index_list(o.only, ctx, ks, msg)) {
    err << "error: " << msg << "\n";
    return 2;
  }
  HFamily fam = h_family_generating(ctx);
  bool json = o.format == "json";
  for (int k : ks) {
    DerivationOperator D = build_script_l(ctx, k, fam.h.at(k));
    if (json) {
      nlohmann::json wmap = nlohmann::json::object();
      for (int j = 1; j <= 2 * ctx.g - 1; j += 2)
        wmap[std::to_string(j)] = to_json(compute_w(ctx, k, j, fam.h.at(k)));
      nlohmann::json line = {{"index", 2 * k}, {"scriptL", to_json(D, ctx.g)}, {"w", wmap}};
      out << line.dump() << "\n";
    } else {
      out << "scriptL_" << 2 * k << " = " << render(D) << "\n";
      for (int j = 1; j <= 2 * ctx.g - 1; j += 2)
        out << "w_" << 2 * k << "_" << j << " = " << render(compute_w(ctx, k, j, fam.h.at(k)))
            << "\n";
    }
  }
  return 0;
}

inline int cmd_fixtures(const Options& o, std::ostream& out, std::ostream& err) {
  GenusContext ctx{o.genus};
  FixtureSet fx = load_fixtures(o.fixtures, ctx.g);
  HFamily fam = h_family_generating(ctx);
  std::vector<CheckRecord> recs = golden_compare_h(ctx, fx, fam);
  if (fx.has_script_l) {
    auto v = golden_compare_script_l(ctx, fx, fam);
    recs.insert(recs.end(), v.begin(), v.end());
  }
  if (fx.has_w) {
    auto v = golden_compare_w(ctx, fx, fam);
    recs.insert(recs.end(), v.begin(), v.end());
  }
  int failed = 0;
  std::map<std::string, int> by_status;
  for (const auto& r : recs) {
    if (!r.ok()) ++failed;
    ++by_status[r.status];
  }
  if (o.format == "json") {
    for (const auto& r : recs) out << record_json(r).dump() << "\n";
    nlohmann::json summary = {{"summary", true},
                              {"genus", ctx.g},
                              {"records", recs.size()},
                              {"failed", failed},
                              {"result", failed == 0 ? "pass" : "fail"}};
    out << summary.dump() << "\n";
  } else {
    for (const auto& r : recs) {
      out << r.check << " " << record_label(r) << ": " << r.status;
      if (!r.note.empty()) out << " -- " << r.note;
      out << "\n";
    }
    out << recs.size() << " records:";
    bool first = true;
    for (const auto& [st, n] : by_status) {
      out << (first ? " " : ", ") << n << " " << st;
      first = false;
    }
    out << "; result " << (failed == 0 ? "pass" : "fail") << "\n";
  }
  (void)err;
  return failed == 0 ? 0 : 1;
}

}  // namespace cli_detail

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact heat operators and derivations for hyperelliptic sigma functions"};
  app.name("heatcli");
  app.require_subcommand(1);

  cli_detail::Options o;
  auto add_common = [&](CLI::App* sub, bool with_fixtures) {
    sub->add_option("--genus", o.genus, "curve genus (>= 1)")
        ->required()
        ->check(CLI::PositiveNumber);
    sub->add_option("--format", o.format, "report format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    sub->add_option("--out", o.out, "write the report to this file instead of stdout");
    if (with_fixtures)
      sub->add_option("--fixtures", o.fixtures, "golden fixture directory")
          ->capture_default_str();
  };

  CLI::App* gen = app.add_subcommand("gen", "print the generators L, H and Q = L - H");
  add_common(gen, false);
  gen->add_option("--only", o.only, "comma-separated even subscripts to print");

  CLI::App* verify =
      app.add_subcommand("verify", "check the commutation identities and golden tables");
  add_common(verify, true);
  verify->add_option(
      "--only", o.only,
      "comma-separated checks: dual,euler,lemma33,q-structure,lemma21,lemma32,grading,golden");

  CLI::App* bracket =
      app.add_subcommand("bracket", "expand brackets of generators over the basis");
  add_common(bracket, false);
  bracket->add_option("--only", o.only, "one pair 'i,j' of even subscripts");

  CLI::App* derive =
      app.add_subcommand("derive", "print the derivation operators and their right-hand sides");
  add_common(derive, false);
  derive->add_option("--only", o.only, "comma-separated even subscripts to print");

  CLI::App* fixtures =
      app.add_subcommand("fixtures", "validate the golden fixture transcriptions");
  add_common(fixtures, true);

  std::reverse(args.begin(), args.end());
  try {
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  std::ofstream file;
  std::ostream* target = &out;
  if (!o.out.empty()) {
    file.open(o.out);
    if (!file) {
      err << "error: cannot open '" << o.out << "' for writing\n";
      return 1;
    }
    target = &file;
  }

  try {
    if (app.got_subcommand(gen)) return cli_detail::cmd_gen(o, *target, err);
    if (app.got_subcommand(verify)) return cli_detail::cmd_verify(o, *target, err);
    if (app.got_subcommand(bracket)) return cli_detail::cmd_bracket(o, *target, err);
    if (app.got_subcommand(derive)) return cli_detail::cmd_derive(o, *target, err);
    if (app.got_subcommand(fixtures)) return cli_detail::cmd_fixtures(o, *target, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "error: no command\n";
  return 2;
}

}  // namespace heatalg

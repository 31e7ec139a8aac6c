#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "heatalg/cli_app.hpp"

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = heatalg::run_cli(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::string fixtures_dir() { return std::string(HEATALG_SOURCE_DIR) + "/fixtures"; }

const char* kGenGenus1 =
    "L_0 = 4 l4 dl4 + 6 l6 dl6\n"
    "H_0 = z1 d1 - 1\n"
    "Q_0 = 4 l4 dl4 + 6 l6 dl6 - z1 d1 + 1\n"
    "L_2 = 6 l6 dl4 - 4/3 l4^2 dl6\n"
    "H_2 = 1/2 d1^2 - 1/6 l4 z1^2\n"
    "Q_2 = 6 l6 dl4 - 4/3 l4^2 dl6 - 1/2 d1^2 + 1/6 l4 z1^2\n";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("gen prints the three families") {
  auto r = run({"gen", "--genus", "1"});
  CHECK(r.code == 0);
  CHECK(r.out == kGenGenus1);
  CHECK(r.err.empty());

  // Byte-identical on a second run.
  auto r2 = run({"gen", "--genus", "1"});
  CHECK(r2.out == r.out);

  // --only restricts to the requested subscripts.
  auto r3 = run({"gen", "--genus", "1", "--only", "2"});
  CHECK(r3.code == 0);
  CHECK(r3.out ==
        "L_2 = 6 l6 dl4 - 4/3 l4^2 dl6\n"
        "H_2 = 1/2 d1^2 - 1/6 l4 z1^2\n"
        "Q_2 = 6 l6 dl4 - 4/3 l4^2 dl6 - 1/2 d1^2 + 1/6 l4 z1^2\n");
}

TEST_CASE("gen emits one json object per generator") {
  auto r = run({"gen", "--genus", "2", "--format", "json"});
  CHECK(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) {
    nlohmann::json j = nlohmann::json::parse(line);
    CHECK(j.at("index") == 2 * count);
    CHECK(j.at("L").at("kind") == "vector-field");
    CHECK(j.at("H").at("kind") == "weyl");
    CHECK(j.at("Q").at("kind") == "schrodinger");
    ++count;
  }
  CHECK(count == 4);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate", "--genus", "1"}).code == 2);
  CHECK(run({"gen"}).code == 2);                          // --genus is required
  CHECK(run({"gen", "--genus", "0"}).code == 2);          // must be positive
  CHECK(run({"gen", "--genus", "-3"}).code == 2);
  CHECK(run({"gen", "--genus", "1", "--format", "xml"}).code == 2);

  auto odd = run({"gen", "--genus", "1", "--only", "3"});
  CHECK(odd.code == 2);
  CHECK(odd.err.find("even subscript") != std::string::npos);
  CHECK(run({"gen", "--genus", "1", "--only", "4"}).code == 2);   // above 4g-2
  CHECK(run({"gen", "--genus", "1", "--only", "a"}).code == 2);

  auto bad = run({"verify", "--genus", "1", "--only", "bogus"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("unknown check 'bogus'") != std::string::npos);

  CHECK(run({"bracket", "--genus", "2", "--only", "2"}).code == 2);
  CHECK(run({"bracket", "--genus", "2", "--only", "2,2"}).code == 2);
}

TEST_CASE("help exits with 0") {
  auto r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("gen") != std::string::npos);
  CHECK(r.out.find("verify") != std::string::npos);
}

TEST_CASE("verify reports every group at genus 1") {
  auto r = run({"verify", "--genus", "1", "--fixtures", fixtures_dir()});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "dual: pass (2 checks)\n"
        "euler: pass (4 checks)\n"
        "lemma33: pass (2 checks)\n"
        "q-structure: pass (1 checks)\n"
        "lemma21: pass (2 checks)\n"
        "lemma32: pass (2 checks)\n"
        "grading: pass (11 checks)\n"
        "golden: pass (2 checks)\n"
        "RESULT: pass\n");
}

TEST_CASE("verify honors --only") {
  auto r = run({"verify", "--genus", "1", "--only", "euler,lemma33"});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "euler: pass (4 checks)\n"
        "lemma33: pass (2 checks)\n"
        "RESULT: pass\n");
}

TEST_CASE("verify json summary") {
  auto r = run({"verify", "--genus", "1", "--format", "json", "--fixtures", fixtures_dir()});
  CHECK(r.code == 0);
  std::istringstream lines(r.out);
  std::string line, last;
  int count = 0;
  while (std::getline(lines, line)) {
    last = line;
    ++count;
  }
  nlohmann::json summary = nlohmann::json::parse(last);
  CHECK(summary.at("summary") == true);
  CHECK(summary.at("genus") == 1);
  CHECK(summary.at("records") == 26);
  CHECK(summary.at("failed") == 0);
  CHECK(summary.at("result") == "pass");
  CHECK(count == 27);  // 26 records + summary
}

TEST_CASE("bracket expands over the generator basis") {
  auto r = run({"bracket", "--genus", "2", "--only", "2,4"});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "[L_2, L_4] = (20 l10 - 16/5 l4 l6) dl4 + (48/5 l6^2 - 72/5 l4 l8 + 96/25 l4^3) dl6 + "
        "(52/5 l6 l8 - 4 l4 l10 + 64/25 l4^2 l6) dl8 - "
        "(16/5 l8^2 - 24 l6 l10 - 32/25 l4^2 l8) dl10\n"
        "[Q_2, Q_4] = 8/5 l6 Q_0 - 8/5 l4 Q_2 + 2 Q_6\n");

  // Without --only, every pair i < j appears.
  auto all = run({"bracket", "--genus", "1"});
  CHECK(all.code == 0);
  CHECK(all.out ==
        "[L_0, L_2] = 12 l6 dl4 - 8/3 l4^2 dl6\n"
        "[Q_0, Q_2] = 2 Q_2\n");
}

TEST_CASE("bracket json lists the expansion") {
  auto r = run({"bracket", "--genus", "2", "--only", "2,4", "--format", "json"});
  CHECK(r.code == 0);
  nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j.at("i") == 2);
  CHECK(j.at("j") == 4);
  CHECK(j.at("field").at("kind") == "vector-field");
  REQUIRE(j.at("expansion").size() == 3);  // Q_0, Q_2, Q_6 carry nonzero coefficients
  CHECK(j.at("expansion")[0].at("index") == 0);
  CHECK(j.at("expansion")[2].at("index") == 6);
}

TEST_CASE("derive prints operators and right-hand sides") {
  auto r = run({"derive", "--genus", "1"});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "scriptL_0 = L0 - z1 d1\n"
        "w_0_1 = psi1\n"
        "scriptL_2 = L2 - psi1 d1\n"
        "w_2_1 = -1/2 psi111 - 1/3 l4 z1\n");

  auto j = run({"derive", "--genus", "1", "--only", "2", "--format", "json"});
  CHECK(j.code == 0);
  nlohmann::json line = nlohmann::json::parse(j.out);
  CHECK(line.at("index") == 2);
  CHECK(line.at("scriptL").at("kind") == "script-l");
  CHECK(line.at("w").at("1").at("kind") == "psi-poly");
}

TEST_CASE("fixtures verb classifies the printed tables") {
  auto r = run({"fixtures", "--genus", "1", "--fixtures", fixtures_dir()});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "golden-h H_0: exact\n"
        "golden-h H_2: exact\n"
        "2 records: 2 exact; result pass\n");

  auto g4 = run({"fixtures", "--genus", "4", "--fixtures", fixtures_dir()});
  CHECK(g4.code == 0);
  CHECK(g4.out.find("49 records:") != std::string::npos);
  CHECK(g4.out.find("19 exact") != std::string::npos);
  CHECK(g4.out.find("25 pass_mod_documented_sign") != std::string::npos);
  CHECK(g4.out.find("1 reported") != std::string::npos);
  CHECK(g4.out.find("4 typo_candidate") != std::string::npos);
  CHECK(g4.out.find("result pass") != std::string::npos);

  // A missing fixture directory is a runtime failure, not a usage error.
  CHECK(run({"fixtures", "--genus", "1", "--fixtures", "/nonexistent"}).code == 1);
}

TEST_CASE("reports can be written to a file") {
  const char* path = "test_cli_out.tmp";
  auto r = run({"gen", "--genus", "1", "--out", path});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == kGenGenus1);
  std::remove(path);
}

}  // TEST_SUITE

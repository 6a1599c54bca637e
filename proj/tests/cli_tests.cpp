#include "test_support.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(TABPROT_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult res;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, got);
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string fx(const std::string& name) { return tabprot::testing::fixture_path(name); }

}  // namespace

TEST_CASE("cli: protection test exit codes and verdicts") {
  RunResult ok = run_cli("test-protection " + fx("fig3.json") + " --cells 1:a");
  CHECK(ok.exit_code == 0);
  CHECK(nlohmann::json::parse(ok.out).at("verdict") == "protected");

  RunResult bad = run_cli("test-protection " + fx("fig3.json") + " --cells all");
  CHECK(bad.exit_code == 1);
  auto doc = nlohmann::json::parse(bad.out);
  CHECK(doc.at("verdict") == "not_protected");
  CHECK(doc.at("witness").at("kind") == "edge_cut");
}

TEST_CASE("cli: protect in both modes on tk22") {
  RunResult exact = run_cli("protect " + fx("tk22.json") + " --cells all --mode exact");
  CHECK(exact.exit_code == 0);
  auto doc = nlohmann::json::parse(exact.out);
  CHECK(doc.at("size") == 5);
  CHECK(doc.at("verified") == true);
  CHECK(doc.at("stats").at("w_b") == 1);

  RunResult paper = run_cli("protect " + fx("tk22.json") + " --cells all --mode paper");
  CHECK(paper.exit_code == 2);
  CHECK(nlohmann::json::parse(paper.out).at("infeasible") == true);
}

TEST_CASE("cli: validate and analyze") {
  CHECK(run_cli("validate " + fx("fig1.json")).exit_code == 0);

  RunResult an = run_cli("analyze " + fx("fig2.json"));
  CHECK(an.exit_code == 0);
  auto doc = nlohmann::json::parse(an.out);
  CHECK(doc.at("invariant_cells").size() == 3);
  CHECK(doc.at("components").size() == 1);
  CHECK(doc.at("suppressed_graph").size() == 21);
}

TEST_CASE("cli: oracle agrees with protect on tk22") {
  RunResult res = run_cli("oracle " + fx("tk22.json") + " --cells all");
  CHECK(res.exit_code == 0);
  CHECK(nlohmann::json::parse(res.out).at("size") == 5);
}

TEST_CASE("cli: hitting-set reduction") {
  std::string path = "/tmp/tabprot_cli_hs1.json";
  {
    std::ofstream f(path);
    f << R"({"elements":["s1","s2"],"sets":[["s1"],["s1","s2"]],"budget":1})";
  }
  RunResult res = run_cli("reduce-hitting-set " + path);
  CHECK(res.exit_code == 0);
  auto doc = nlohmann::json::parse(res.out);
  CHECK(doc.at("budget") == 4);
  CHECK(doc.at("suppressed").size() == 2);
  std::remove(path.c_str());
}

TEST_CASE("cli: cells can come from a JSON file") {
  std::string path = "/tmp/tabprot_cli_cells.json";
  {
    std::ofstream f(path);
    f << R"([{"row":"1","col":"a"},{"row":"2","col":"c"}])";
  }
  RunResult res = run_cli("test-protection " + fx("fig3.json") + " --cells " + path);
  CHECK(res.exit_code == 0);
  CHECK(nlohmann::json::parse(res.out).at("verdict") == "protected");
  std::remove(path.c_str());
}

TEST_CASE("cli: byte-identical output across runs") {
  RunResult a = run_cli("analyze " + fx("fig2.json"));
  RunResult b = run_cli("analyze " + fx("fig2.json"));
  CHECK(a.out == b.out);
  RunResult c = run_cli("protect " + fx("tk22.json") + " --cells all --mode exact");
  RunResult d = run_cli("protect " + fx("tk22.json") + " --cells all --mode exact");
  CHECK(c.out == d.out);
}

TEST_CASE("cli: input errors exit with 3") {
  CHECK(run_cli("validate /nonexistent.json").exit_code == 3);
  CHECK(run_cli("test-protection " + fx("fig3.json") + " --cells 9:z").exit_code == 3);
  CHECK(run_cli("analyze " + fx("fig3.json") + " --bogus-flag").exit_code == 3);
  CHECK(run_cli("protect " + fx("tk22.json") + " --cells all --mode wild").exit_code == 3);
  // q with a published cell is an input error as well
  CHECK(run_cli("test-protection " + fx("fig3.json") + " --cells 1:c").exit_code == 3);
}

TEST_CASE("cli: --out writes the payload to a file") {
  std::string path = "/tmp/tabprot_cli_out.json";
  RunResult res = run_cli("--out " + path + " analyze " + fx("fig3.json"));
  CHECK(res.exit_code == 0);
  CHECK(res.out.empty());
  auto doc = nlohmann::json::parse(tabprot::testing::slurp(path));
  CHECK(doc.at("suppressed_graph").size() == 7);
  std::remove(path.c_str());
}

TEST_CASE("cli: bench emits the pinned CSV header") {
  RunResult res = run_cli("bench --sizes 200 --seed 3");
  CHECK(res.exit_code == 0);
  CHECK(res.out.rfind("size,m,n,milliseconds\n", 0) == 0);
  CHECK(res.out.find("200,400,") != std::string::npos);
}

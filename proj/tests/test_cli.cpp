#include <doctest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>

// CPW_BIN and CPW_SOURCE_DIR come from the build.

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(CPW_BIN) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string op(const char* name) { return std::string(CPW_SOURCE_DIR) + "/operators/" + name; }

}  // namespace

TEST_CASE("exit codes") {
  CHECK(run("").code == 4);
  CHECK(run("frobnicate").code == 4);
  CHECK(run("verify").code == 4);
  CHECK(run("verify nothing").code == 4);
  CHECK(run("powers").code == 2);
  CHECK(run("powers --operator /nonexistent.json").code == 2);
  CHECK(run("powers --operator " + op("laplace-1d.json") + " --s 0.5+zi").code == 2);
  CHECK(run("powers --operator " + op("non-elliptic.json")).code == 3);
  CHECK(run("--config /nonexistent.ini verify oracle").code == 2);
  CHECK(run("--jobs 0 verify oracle").code == 2);
  CHECK(run("--help").code == 0);
}

TEST_CASE("powers emits json") {
  const Run r = run("powers --operator " + op("laplace-1d.json") + " --depth 2 --s 0.5-0.25i");
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["command"] == "powers");
  CHECK(doc["parts"].size() == 3);
  CHECK(doc["degree_law"] == true);
  CHECK(doc["s"][1] == -0.25);
}

TEST_CASE("oracle compare") {
  const Run r = run("oracle compare --operator " + op("shifted-1d.json") + " --depth 3");
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["match"] == true);
}

TEST_CASE("rumin spectrum csv") {
  const Run r = run("rumin spectrum --slot 0 --lmax 3");
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "slot,level,index,eigenvalue,multiplicity");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 1 + 2 + 3 + 4);
}

TEST_CASE("global flags after the subcommand and environment") {
  const std::string a = "cpw_cli_test_a.json", b = "cpw_cli_test_b.json";
  CHECK(run("verify oracle --seed 4 --emit " + a).code == 0);
  setenv("CPW_SEED", "4", 1);
  CHECK(run("verify oracle --emit " + b).code == 0);
  unsetenv("CPW_SEED");
  std::ifstream fa(a), fb(b);
  std::stringstream sa, sb;
  sa << fa.rdbuf();
  sb << fb.rdbuf();
  CHECK(!sa.str().empty());
  CHECK(sa.str() == sb.str());
  CHECK(nlohmann::json::parse(sa.str())["header"]["seed"] == 4);
  std::remove(a.c_str());
  std::remove(b.c_str());
}

TEST_CASE("suite report on stdout stays parseable") {
  const Run r = run("verify oracle --emit -");
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["checks"].size() == 2);
}

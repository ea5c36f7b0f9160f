#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>

#include "cpw/config.hpp"
#include "cpw/errors.hpp"
#include "cpw/report.hpp"

using namespace cpw;
using nlohmann::json;

TEST_CASE("defaults parse from an empty file") {
  const Config c = parse_config("");
  CHECK(c.seed == 1);
  CHECK(c.lmax == 40);
  CHECK(c.tol_reduction == 1e-10);
  CHECK(config_hash(c) == config_hash(Config{}));
}

TEST_CASE("sections and overrides") {
  const Config c = parse_config("[run]\nseed = 9\n[rumin]\nc = 1.5\nlmax = 12\n");
  CHECK(c.seed == 9);
  CHECK(c.c == 1.5);
  CHECK(c.lmax == 12);

  Config d;
  apply_overrides(d, {{"heisenberg.n", "64"}, {"tolerances.weyl", "0.2"}});
  CHECK(d.n == 64);
  CHECK(d.tol_weyl == 0.2);
}

TEST_CASE("every problem is reported") {
  try {
    parse_config("[run]\nseed = x\nbogus = 1\n[rumin]\nlmax = 2\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string what = e.what();
    CHECK(what.find("run.seed") != std::string::npos);
    CHECK(what.find("run.bogus") != std::string::npos);
  }
  // range problems surface after parsing succeeds
  try {
    parse_config("[rumin]\nlmax = 2\nc = -1\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string what = e.what();
    CHECK(what.find("rumin.lmax") != std::string::npos);
    CHECK(what.find("rumin.c") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config("seed = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[run\nseed = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[heisenberg]\nn = 17\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[tolerances]\ncontour = 0\n"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/cpw.ini"), ConfigError);
}

TEST_CASE("hash") {
  Config a, b;
  CHECK(config_hash(a).size() == 64);
  CHECK(config_hash(a) == config_hash(b));
  b.tol_weyl = 0.15000000000000002;
  CHECK(config_hash(a) != config_hash(b));
  b = a;
  b.jobs = 4;
  CHECK(config_hash(a) == config_hash(b));
  b.seed = 2;
  CHECK(config_hash(a) != config_hash(b));
  // round trip through the canonical text
  const std::string text = canonical_text(a);
  CHECK(text.find("run.jobs") == std::string::npos);
  CHECK(text.find("tolerances.residue = 1e-08\n") != std::string::npos);
}

TEST_CASE("canonical text parses back") {
  Config a;
  a.c = 0.1;
  a.seed = 12345678901234ull;
  std::string ini;
  std::string section;
  const std::string text = canonical_text(a);
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t end = text.find('\n', pos);
    const std::string line = text.substr(pos, end - pos);
    pos = end + 1;
    const std::size_t dot = line.find('.');
    const std::string sec = line.substr(0, dot);
    if (sec != section) {
      ini += "[" + sec + "]\n";
      section = sec;
    }
    ini += line.substr(dot + 1) + "\n";
  }
  const Config b = parse_config(ini);
  CHECK(config_hash(b) == config_hash(a));
  CHECK(b.c == 0.1);
}

TEST_CASE("report bytes") {
  const json doc = {{"b", 0.1}, {"a", json::array({1.0 / 3.0, 2, true})}, {"c", {{"z", -0.0}, {"y", "s"}}}};
  const std::string text = dump_report(doc);
  CHECK(text.find("0.10000000000000001") != std::string::npos);
  CHECK(text.find("0.33333333333333331") != std::string::npos);
  CHECK(text.find("\"a\"") < text.find("\"b\""));
  CHECK(dump_report(json::parse(text)) == text);
  CHECK(dump_report(doc) == text);

  const json h = report_header(Config{});
  CHECK(h["config_hash"] == config_hash(Config{}));
  CHECK(h["seed"] == 1);
  CHECK(h.contains("versions"));
  CHECK(dump_report(h).find("time") == std::string::npos);
}

TEST_CASE("write_text") {
  const std::string path = "cpw_write_text_test.json";
  write_text(path, "abc\n");
  std::ifstream in(path);
  std::string s;
  std::getline(in, s);
  CHECK(s == "abc");
  std::remove(path.c_str());
  CHECK_THROWS(write_text("/nonexistent/dir/x.json", "x"));
}

#include "doctest.h"

#include <array>
#include <cstdio>
#include <unistd.h>
#include <sstream>

#include "dpres/cli.hpp"
#include "dpres/error.hpp"
#include "dpres/io.hpp"
#include "support.hpp"

using namespace dpres;
using json = nlohmann::ordered_json;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run_cli(const std::string& args) {
  std::string cmd = std::string(DPRES_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

void leaves(const json& v, const std::string& path, std::vector<std::pair<std::string, std::string>>& out) {
  if (v.is_object()) {
    for (const auto& [k, x] : v.items()) leaves(x, path.empty() ? k : path + "." + k, out);
  } else if (v.is_array()) {
    std::size_t k = 0;
    for (const auto& x : v) leaves(x, path + "." + std::to_string(k++), out);
  } else if (v.is_number() || v.is_boolean()) {
    out.emplace_back(path, v.dump());
  }
}

// Every numeric or boolean leaf appears as "path,value" in the CSV and as "key: value"
// (or inside a space separated list under that key) in the text.
void check_renderings_agree(const Report& r) {
  json parsed = json::parse(r.json());
  CHECK(parsed == r.data);
  std::vector<std::pair<std::string, std::string>> vals;
  leaves(parsed, "", vals);
  const std::string csv = r.csv(), text = r.text();
  for (const auto& [path, value] : vals) {
    CHECK_MESSAGE(csv.find(path + "," + value + "\n") != std::string::npos, path);
    std::string key = path.substr(path.rfind('.') == std::string::npos ? 0 : path.rfind('.') + 1);
    bool is_index = !key.empty() && std::isdigit(static_cast<unsigned char>(key[0]));
    if (!is_index) {
      CHECK_MESSAGE(text.find(key + ": " + value + "\n") != std::string::npos, path);
    } else {
      CHECK_MESSAGE(text.find(" " + value) != std::string::npos, path);
    }
  }
}

}  // namespace

TEST_CASE("parse the two-generator example") {
  DPMatrix p = read_dpmatrix_file(std::string(DPRES_DATA) + "/two_generators.dpm");
  CHECK(p.rows() == 1);
  CHECK(p.cols() == 2);
  CHECK(p.col_twists() == std::vector<int>{3, 2});
  CHECK(p.entry(0, 0).to_string() == "X1^(3)");
  CHECK(p.field().characteristic() == 0);
  CHECK(hilbert_vector(quotient_module(p)) == std::vector<std::size_t>{1, 2, 2, 1});
}

TEST_CASE("parse details") {
  DPMatrix p = parse_dpmatrix(
      "# comment\nfield 7\nvars 3\nweights 1 2 1\nrowtwists -4\ncoltwists 0 1\n"
      "entry 1 1 : 3*X1^(2)X2 - X1 X2 X3 + X2^(2)  # trailing comment\n");
  CHECK(p.ring().weights() == std::vector<int>{1, 2, 1});
  CHECK(p.entry(0, 1).is_zero());
  CHECK(p.entry(0, 0).size() == 3);

  DPMatrix empty = parse_dpmatrix("field 2\nvars 2\nrowtwists 0 -1\ncoltwists 0 1 2\n");
  CHECK(empty.rows() == 2);
  CHECK(empty.cols() == 3);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(empty.entry(i, j).is_zero());

  DPMatrix q = parse_dpmatrix("field QQ\nvars 1\nrowtwists -2\ncoltwists 0\nentry 1 1 : -3/4*X1^(2)\n");
  CHECK(q.entry(0, 0).to_string() == "-3/4*X1^(2)");
}

TEST_CASE("parse errors carry positions") {
  auto message = [](const std::string& text) {
    try {
      parse_dpmatrix(text);
    } catch (const ParseError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  std::string head = "field 5\nvars 2\nrowtwists 0\ncoltwists 2\n";
  std::string m1 = message(head + "entry 1 1 : X1^(3)\n");
  CHECK(m1.find("line 5") != std::string::npos);
  CHECK(m1.find("(1,1)") != std::string::npos);
  CHECK(m1.find("-3") != std::string::npos);
  CHECK(m1.find("-2") != std::string::npos);
  CHECK(message("field 6\n").find("not prime") != std::string::npos);
  CHECK(message("field 6\n").find("line 1, column 7") != std::string::npos);
  CHECK(message("fied 5\n").find("unknown directive") != std::string::npos);
  CHECK(message(head + "entry 1 1 : X3^(2)\n").find("column 14") != std::string::npos);
  CHECK(message(head + "entry 2 1 : X1^(2)\n").find("row index") != std::string::npos);
  CHECK(message(head + "entry 1 1 : X1^(2) X2^(\n").find("line 5") != std::string::npos);
  CHECK(message(head + "entry 1 1 : X1^(2)\nentry 1 1 : X2^(2)\n").find("duplicate") != std::string::npos);
  CHECK(message("vars 2\nrowtwists 0\ncoltwists 0\n").find("field") != std::string::npos);
  CHECK(message(head + "entry 1 1 : 2 X1 ++ X2\n").find("expected") != std::string::npos);
}

TEST_CASE("render then parse is the identity") {
  Rng rng(14);
  for (auto f : {FieldSpec::prime(2), FieldSpec::prime(101), FieldSpec::rationals()}) {
    for (int trial = 0; trial < 10; ++trial) {
      int n = 1 + static_cast<int>(rng() % 4);
      std::vector<int> w(static_cast<std::size_t>(n), 1);
      if (trial % 3 == 0) w[0] = 2;
      Ring r(f, w);
      std::vector<int> a(1 + rng() % 3), b(1 + rng() % 3);
      for (auto& x : a) x = -static_cast<int>(rng() % 4);
      for (auto& x : b) x = static_cast<int>(rng() % 2);
      DPMatrix p = support::random_dpmatrix(rng, r, a, b);
      std::string text = render_dpmatrix(p);
      DPMatrix back = parse_dpmatrix(text);
      CHECK(back == p);
      CHECK(render_dpmatrix(back) == text);
    }
  }
}

TEST_CASE("resolve a complete intersection") {
  DPMatrix p = read_dpmatrix_file(std::string(DPRES_DATA) + "/complete_intersection.dpm");
  Report r = run_resolve(p);
  CHECK(r.data["resolution"]["construction"] == "selfdual");
  CHECK(r.data["betti"]["compact"] == "1;3;3;1");
  CHECK(r.data["middle_map"]["kind"] == "skew");
  CHECK(r.data["middle_map"]["holds"] == true);
  check_renderings_agree(r);

  Report raw = run_resolve(p, false);
  CHECK(raw.data["resolution"]["ranks"] == json::array({8, 24, 24, 8}));
  CHECK(raw.data["betti"]["minimal"] == false);
}

TEST_CASE("resolve the non-Gorenstein examples") {
  for (std::string name : {"two_generators", "not_gorenstein"}) {
    DPMatrix p = read_dpmatrix_file(std::string(DPRES_DATA) + "/" + name + ".dpm");
    Report r = run_resolve(p);
    CHECK(r.data["gorenstein"]["found"] == false);
    CHECK(r.data["resolution"]["construction"] == "nielsen");
    check_renderings_agree(r);
    Report raw = run_resolve(p, false);
    const std::size_t dim = r.data["module"]["dim"].get<std::size_t>();
    CHECK(raw.data["resolution"]["ranks"] == json::array({dim, 2 * dim, dim}));
  }
  Report g = run_check_gorenstein(read_dpmatrix_file(std::string(DPRES_DATA) + "/complete_intersection.dpm"));
  CHECK(g.data["gorenstein"]["found"] == true);
  CHECK(g.data["gorenstein"]["verified"] == true);
  check_renderings_agree(g);
}

TEST_CASE("experiment reports are deterministic") {
  ExperimentConfig cfg;
  cfg.trials = 4;
  cfg.seed = 99;
  Report a = run_char2_experiment(cfg), b = run_char2_experiment(cfg);
  CHECK(a.json() == b.json());
  CHECK(a.text() == b.text());
  check_renderings_agree(a);
  CHECK(a.data["summary"]["passed"] == 4);

  cfg.trials = 0;
  CHECK_THROWS_AS(run_char2_experiment(cfg), ConfigError);
  cfg.trials = 1;
  cfg.ell = 2;
  CHECK_THROWS_AS(run_char2_experiment(cfg), PreconditionError);
  cfg.ell = 4;
  CHECK_THROWS_AS(run_char2_experiment(cfg), PreconditionError);
}

TEST_CASE("hk reports") {
  Report r = run_hk({0, 2, 3, 5, 6, 8});
  CHECK(r.data["normalized"] == json::array({1, 10, 16, 16, 10, 1}));
  CHECK(r.data["equations_hold"] == true);
  CHECK_FALSE(r.data.contains("obstruction"));
  check_renderings_agree(r);
  Report o = run_hk({0, 3, 5, 8});
  CHECK(o.data["obstruction"]["l"] == 2);
  CHECK(o.data["obstruction"]["parity"] == "even,even");
  CHECK_THROWS_AS(run_hk({0, 0, 1}), ConfigError);
}

TEST_CASE("verify reports exactness") {
  Report r = run_verify(read_dpmatrix_file(std::string(DPRES_DATA) + "/two_generators.dpm"), -4, 4);
  CHECK(r.data["all_exact"] == true);
  CHECK(r.data["strands"].size() == 9);
  check_renderings_agree(r);
  CHECK_THROWS_AS(run_verify(read_dpmatrix_file(std::string(DPRES_DATA) + "/two_generators.dpm"), 2, 1),
                  ConfigError);
}

TEST_CASE("int lists") {
  CHECK(parse_int_list("0, 2,3") == std::vector<int>{0, 2, 3});
  CHECK(parse_int_list("-3,2") == std::vector<int>{-3, 2});
  CHECK_THROWS_AS(parse_int_list("1,,2"), ConfigError);
  CHECK_THROWS_AS(parse_int_list("1,x"), ConfigError);
  CHECK_THROWS_AS(parse_int_list(""), ConfigError);
}

TEST_CASE("command line exit codes") {
  const std::string data = DPRES_DATA;
  Run ok = run_cli("resolve --input " + data + "/complete_intersection.dpm --format json");
  CHECK(ok.code == 0);
  CHECK(json::parse(ok.out)["betti"]["compact"] == "1;3;3;1");
  CHECK(run_cli("resolve --input " + data + "/two_generators.dpm --format csv").out.find("betti.compact,") !=
        std::string::npos);
  CHECK(run_cli("").code == 1);
  CHECK(run_cli("resolve").code == 1);
  CHECK(run_cli("resolve --input /nonexistent.dpm").code == 1);
  CHECK(run_cli("hk --degrees 0,0,1").code == 1);
  CHECK(run_cli("hk --degrees 0,2,3,5,6,8").code == 0);
  CHECK(run_cli("experiment char2 --l 4").code == 3);
  CHECK(run_cli("verify --input " + data + "/two_generators.dpm --window=-3,1").code == 0);

  char tmpl[] = "/tmp/dpres_badXXXXXX";
  int fd = mkstemp(tmpl);
  REQUIRE(fd >= 0);
  std::string bad = "field 5\nvars 2\nrowtwists 0\ncoltwists 2\nentry 1 1 : X1^(3)\n";
  CHECK(write(fd, bad.data(), bad.size()) == static_cast<ssize_t>(bad.size()));
  close(fd);
  CHECK(run_cli(std::string("resolve --input ") + tmpl).code == 2);
  std::remove(tmpl);

  Run e1 = run_cli("experiment char2 --l 3 --field 2 --socle 3 --trials 2 --seed 5");
  Run e2 = run_cli("experiment char2 --l 3 --field 2 --socle 3 --trials 2 --seed 5");
  CHECK(e1.code == 0);
  CHECK(e1.out == e2.out);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "pgldes/cli.hpp"

using Json = nlohmann::ordered_json;

namespace {

// The front end writes reports to stdout; capture it per invocation.
struct Invocation {
  int exit_code = 0;
  std::string out;
  Json json() const { return Json::parse(out); }
};

Invocation run(std::vector<const char*> argv) {
  argv.insert(argv.begin(), "pgldes");
  std::stringstream captured;
  std::streambuf* saved = std::cout.rdbuf(captured.rdbuf());
  Invocation r;
  try {
    r.exit_code = pgldes::run_cli(static_cast<int>(argv.size()), argv.data());
  } catch (...) {
    std::cout.rdbuf(saved);
    throw;
  }
  std::cout.rdbuf(saved);
  r.out = captured.str();
  return r;
}

std::string tmp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("field inspection") {
  const auto r = run({"field", "3^3"});
  REQUIRE(r.exit_code == 0);
  const Json j = r.json();
  CHECK(j.at("q") == 27);
  CHECK(j.at("modulus") == Json::array({1, 0, 2, 1}));
}

TEST_CASE("bad field specs exit nonzero with a structured error") {
  const auto r = run({"field", "4^2"});
  CHECK(r.exit_code == 1);
  const Json j = r.json();
  CHECK(j.at("type") == "invalid_argument");
  CHECK(j.contains("error"));
}

TEST_CASE("design build writes a family file, reruns byte-identically") {
  const std::string out1 = tmp_path("pgldes_fam_a.json");
  const std::string out2 = tmp_path("pgldes_fam_b.json");
  const auto r1 = run({"design", "build", "--field", "2^4", "--k", "5",
                       "--out", out1.c_str()});
  REQUIRE(r1.exit_code == 0);
  CHECK(r1.json().at("blocks").size() == 68);

  const auto r2 = run({"design", "build", "--field", "2^4", "--k", "5",
                       "--out", out2.c_str(), "--workers", "3"});
  REQUIRE(r2.exit_code == 0);
  CHECK(slurp(out1) == slurp(out2));
  CHECK(r1.out == r2.out);

  // Feed the file back through the verifier.
  const auto rv =
      run({"design", "verify", "--blocks", out1.c_str(), "--t", "3"});
  REQUIRE(rv.exit_code == 0);
  const Json v = rv.json();
  CHECK(v.at("is_design") == true);
  CHECK(v.at("steiner") == true);
  CHECK(v.at("lambda") == 1);
  CHECK(v.at("b") == 68);

  std::filesystem::remove(out1);
  std::filesystem::remove(out2);
}

TEST_CASE("brute and orbit methods print the same family") {
  const auto brute = run({"design", "build", "--field", "3^2", "--k", "4",
                          "--method", "brute"});
  const auto orbit = run({"design", "build", "--field", "3^2", "--k", "4",
                          "--method", "orbit"});
  REQUIRE(brute.exit_code == 0);
  REQUIRE(orbit.exit_code == 0);
  CHECK(brute.json().at("blocks") == orbit.json().at("blocks"));
  CHECK(brute.json().at("blocks").size() == 30);
}

TEST_CASE("lambda, steiner, and emptiness subcommands") {
  const auto rl = run({"design", "lambda", "--field", "3^3", "--k", "7"});
  REQUIRE(rl.exit_code == 0);
  CHECK(rl.json().at("lambda") == 15);

  const auto rs = run({"design", "steiner", "--field", "3^2", "--m", "1"});
  REQUIRE(rs.exit_code == 0);
  CHECK(rs.json().at("expected_blocks") == 30);
  CHECK(rs.json().at("count_matches") == true);

  const auto re = run({"design", "empty", "--field", "2^3", "--k", "5"});
  REQUIRE(re.exit_code == 0);
  CHECK(re.json().at("status") == "exhausted_empty");

  const auto rn = run({"design", "empty", "--field", "2^4", "--k", "5"});
  CHECK(rn.json().at("status") == "nonempty_witness");
}

TEST_CASE("subspace file input") {
  const std::string path = tmp_path("pgldes_subspace.json");
  {
    // The degree-5 span of X^5, X^4 Y, X Y^4, Y^5 over F_16 (the Lucas
    // monomials), written by hand.
    Json j;
    j["field"] = "2^4:1,0,0,1,1";
    j["k"] = 5;
    j["rows"] = Json::array();
    for (int i : {0, 1, 4, 5}) {
      std::vector<int> row(6, 0);
      row[i] = 1;
      j["rows"].push_back(row);
    }
    std::ofstream(path) << j.dump(2);
  }
  const auto r = run({"design", "build", "--field", "2^4", "--k", "5",
                      "--subspace", ("file:" + path).c_str()});
  REQUIRE(r.exit_code == 0);
  CHECK(r.json().at("blocks").size() == 68);
  std::filesystem::remove(path);
}

TEST_CASE("cayley subcommands") {
  const auto rc = run({"cayley", "classify", "--p", "3", "--kmax", "12"});
  REQUIRE(rc.exit_code == 0);
  CHECK(rc.json().at("single_equation_k") == Json::array({3, 4, 7}));

  const auto rq = run({"cayley", "check", "--field", "2^4", "--k", "5"});
  REQUIRE(rq.exit_code == 0);
  CHECK(rq.json().at("equal") == true);
  CHECK(rq.json().at("line_blocks") == 68);

  const auto rs = run({"cayley", "sixsets", "--field", "3^2"});
  REQUIRE(rs.exit_code == 0);
  CHECK(rs.json().at("count") == 0);
  CHECK(rs.json().at("factor7_matches") == true);
}

TEST_CASE("code subcommands") {
  const auto ri = run({"code", "info", "--field", "7^1", "--k", "3",
                       "--subspace", "full"});
  REQUIRE(ri.exit_code == 0);
  CHECK(ri.json().at("n") == 8);
  CHECK(ri.json().at("dim") == 4);
  CHECK(ri.json().at("d") == 5);

  const auto rd = run({"code", "dualdesign", "--field", "7^1", "--k", "4",
                       "--subspace", "full", "--w", "6"});
  REQUIRE(rd.exit_code == 0);
  CHECK(rd.json().at("design").at("lambda") == 10);
  CHECK(rd.json().at("design").at("is_design") == true);

  const auto rm = run({"code", "melas", "--m", "2"});
  REQUIRE(rm.exit_code == 0);
  CHECK(rm.json().at("lambda2") == 0);
  CHECK(rm.json().at("A5") == 0);
  CHECK(rm.json().at("oracle_agreement") == true);
}

TEST_CASE("csv and text formats flatten the same report") {
  const auto csv = run({"field", "2^2", "--format", "csv"});
  REQUIRE(csv.exit_code == 0);
  CHECK(csv.out.rfind("key,value\n", 0) == 0);
  CHECK(csv.out.find("q,4") != std::string::npos);

  const auto text = run({"field", "2^2", "--format", "text"});
  REQUIRE(text.exit_code == 0);
  CHECK(text.out.find("q: 4") != std::string::npos);
}

TEST_CASE("missing subcommand is a usage error") {
  const auto r = run({});
  CHECK(r.exit_code != 0);
}

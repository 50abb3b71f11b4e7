#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "skos/cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = skos::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& contents) {
  auto path = std::filesystem::temp_directory_path() / ("skos_test_" + name);
  std::ofstream(path) << contents;
  return path.string();
}

}  // namespace

TEST_CASE("homology report") {
  Result r = call({"homology", "--kind", "koszul", "--rank", "0,1", "--base", "Z", "--weight", "3", "--position", "-2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("torsion_odd = [3]") != std::string::npos);

  Result all = call({"homology", "--kind", "derham", "--rank", "2,1", "--weight", "3", "--output", "json"});
  CHECK(all.code == 0);
  auto j = nlohmann::json::parse(all.out);
  CHECK(j.at("base") == "Q");
  CHECK(j.at("homology").size() == 4);
}

TEST_CASE("complex record feeds homology") {
  Result c = call({"koszul", "--rank", "0,1", "--weight", "4", "--output", "json"});
  REQUIRE(c.code == 0);
  std::string path = temp_file("complex.json", c.out);
  Result h = call({"homology", "--input", path, "--base", "Z", "--position", "-3"});
  CHECK(h.code == 0);
  CHECK(h.out == "position -3: free (0|0) torsion_even = [4] torsion_odd = []\n");
  std::filesystem::remove(path);
}

TEST_CASE("complex text output") {
  Result r = call({"koszul", "--rank", "1,0", "--weight", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("position -1: (1|0) [x0*dx0]") != std::string::npos);
  CHECK(r.out.find("d -1 -> 0 (1x1): (0,0,1)") != std::string::npos);
  Result s = call({"specialize", "--rank", "2,0", "--omega", "2,3"});
  CHECK(s.code == 0);
  CHECK(s.out.find("omega 2 3") != std::string::npos);
  Result b = call({"berezinian-complex", "--rank", "1,0", "--weight", "1"});
  CHECK(b.code == 0);
  CHECK(b.out.find("Dx0") != std::string::npos);
}

TEST_CASE("Berezinian of a file and of a random matrix") {
  auto id = nlohmann::json::parse(R"({"p": 1, "q": 1, "grassmann_gens": 2,
      "entries": [[[{"coeff": "1", "thetas": []}], []], [[], [{"coeff": "1", "thetas": []}]]]})");
  std::string path = temp_file("identity.json", id.dump());
  Result r = call({"ber", "--input", path});
  CHECK(r.code == 0);
  CHECK(r.out == "1\n");
  std::filesystem::remove(path);

  Result a = call({"ber", "--random", "--seed", "5", "--p", "2", "--q", "1", "--gens", "3"});
  Result b = call({"ber", "--random", "--seed", "5", "--p", "2", "--q", "1", "--gens", "3"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  Result j = call({"ber", "--random", "--seed", "5", "--output", "json"});
  CHECK(nlohmann::json::parse(j.out).contains("matrix"));
}

TEST_CASE("Bott tables") {
  Result r = call({"bott", "--m", "1", "--n", "1", "--p", "1", "--r", "2", "--method", "both", "--output", "csv"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\n1,1,1,2,0,2,2,both\n") != std::string::npos);
  CHECK(r.out.rfind("m,n,p,r,i,even,odd,method\n", 0) == 0);

  Result t = call({"bott", "--m", "2", "--n", "0", "--p-max", "2", "--r-min", "1", "--r-max", "3", "--method", "both"});
  CHECK(t.code == 0);
  CHECK(std::count(t.out.begin(), t.out.end(), '\n') == 9);

  Result j = call({"bott", "--m", "1", "--n", "1", "--p", "1", "--r", "-2", "--output", "json"});
  CHECK(nlohmann::json::parse(j.out).at("tables").size() == 1);

  Result l = call({"line-bundle", "--m", "1", "--n", "1", "--r-min", "-1", "--r-max", "1", "--output", "csv"});
  CHECK(l.code == 0);
  CHECK(l.out.find("1,1,0,-1,1,0,1,line-bundle") != std::string::npos);
}

TEST_CASE("usage and input errors exit with 2") {
  CHECK(call({}).code == 2);
  CHECK(call({"frobnicate"}).code == 2);
  CHECK(call({"koszul", "--rank", "1"}).code == 2);
  CHECK(call({"koszul", "--rank", "1,1", "--bogus"}).code == 2);
  CHECK(call({"homology", "--rank", "1,0", "--base", "Fp:9"}).code == 2);
  CHECK(call({"homology", "--rank", "1,0", "--weight", "2", "--cap", "0", "--position", "-1"}).code == 2);
  CHECK(call({"bott", "--m", "1", "--n", "1", "--r", "2"}).code == 2);
  CHECK(call({"bott", "--m", "1", "--p", "1", "--r", "2", "--method", "guess"}).code == 2);
  CHECK(call({"ber"}).code == 2);
  CHECK(call({"ber", "--input", "/nonexistent/m.json"}).code == 2);
  CHECK(call({"specialize", "--rank", "1,1", "--omega", "1,1"}).code == 2);
  Result e = call({"koszul", "--rank", "x,1"});
  CHECK(e.code == 2);
  CHECK_FALSE(e.err.empty());

  auto singular = nlohmann::json::parse(R"({"p": 1, "q": 0, "grassmann_gens": 0, "entries": [[[]]]})");
  std::string path = temp_file("singular.json", singular.dump());
  CHECK(call({"ber", "--input", path}).code == 2);
  std::filesystem::remove(path);
}

TEST_CASE("help exits with 0") {
  Result r = call({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("bott") != std::string::npos);
}

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "doctest.h"
#include "eqloc/errors.hpp"

namespace fs = std::filesystem;
using eqloc::cli::run;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  Result r;
  r.code = run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path scratch(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("eqloc_cli_test_" + name);
  fs::remove_all(d);
  return d;
}

}  // namespace

TEST_CASE("integrate") {
  CHECK(call({"integrate", "--grass", "3,7", "--volume"}).out == "462\n");
  CHECK(call({"integrate", "--grass", "1,4", "--power", "2"}).out == "0\n");
  CHECK(call({"integrate", "--grass", "1,4", "--power", "3"}).out == "1\n");
  CHECK(call({"integrate", "--grass", "2,4", "--template", "x1^2+x2^2"}).code == 0);
  const Result bad = call({"integrate", "--grass", "2,4", "--template", "x1"});
  CHECK(bad.code == eqloc::cli::kMathError);
  CHECK(call({"integrate", "--grass", "1,4", "--power", "-1"}).code == eqloc::cli::kInputError);
  CHECK(call({"integrate", "--grass", "4,2", "--volume"}).code == eqloc::cli::kInputError);
}

TEST_CASE("schur, expand, gysin, residue, cone") {
  CHECK(call({"schur", "--partition", "2,1", "--vars", "1,2"}).out == "t1*t2^2 + t1^2*t2\n");
  CHECK(call({"expand", "--poly", "t1^2+t1*t2+t2^2", "--nvars", "2", "--vars", "1,2"}).out == "(2) : 1\n");
  const Result g = call({"gysin", "--grass", "2,4", "-J", "3,2", "-K", "0"});
  CHECK(g.code == 0);
  CHECK(g.out.find("t4 + t3 + t2 + t1") != std::string::npos);
  CHECK(call({"gysin", "--grass", "2,4", "-J", "3,2", "--check"}).code == 0);
  CHECK(call({"residue", "--grass", "1,2", "--template", "x1^2"}).out == "-t2 - t1\n");
  CHECK(call({"cone", "--scalar", "0,4,-2"}).out == "t^3 - 2*t^2 + 4*t\n");
}

TEST_CASE("omega1 writes its files and respects the heavy gate") {
  const fs::path d1 = scratch("direct"), d2 = scratch("gkm");
  const Result a = call({"omega1", "--n", "3", "--out", d1.string()});
  REQUIRE(a.code == 0);
  CHECK(a.out.find("euler characteristic: 19") != std::string::npos);
  const Result b = call({"omega1", "--n", "3", "--method", "gkm", "--out", d2.string()});
  REQUIRE(b.code == 0);
  for (const char* f : {"f3.json", "table3.json", "schur3.json"}) {
    INFO(f);
    CHECK(fs::exists(d1 / f));
    CHECK(slurp(d1 / f) == slurp(d2 / f));
  }
  const Result heavy = call({"omega1", "--n", "4"});
  CHECK(heavy.code == eqloc::cli::kHeavyRefused);
  CHECK(heavy.err.find("--allow-heavy") != std::string::npos);
  CHECK(call({"omega1", "--n", "2", "--method", "fast", "--out", d1.string()}).code ==
        eqloc::cli::kInputError);
  fs::remove_all(d1);
  fs::remove_all(d2);
}

TEST_CASE("omega1 fills the cache named in the environment") {
  const fs::path cache = scratch("cache"), out = scratch("cache_out");
  ::setenv("EQLOC_CACHE_DIR", cache.c_str(), 1);
  CHECK(call({"omega1", "--n", "2", "--out", out.string()}).code == 0);
  ::unsetenv("EQLOC_CACHE_DIR");
  CHECK(fs::exists(cache / "f_1.json"));
  CHECK(fs::exists(cache / "f_2.json"));
  fs::remove_all(cache);
  fs::remove_all(out);
}

TEST_CASE("positivity exit codes") {
  const Result ok = call({"positivity", "--poly", "t4+t3-t2-t1", "--nvars", "4", "--tree", "1>2,2>4,4>3"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("positive basis: yes") != std::string::npos);
  CHECK(ok.out.find("PASS") != std::string::npos);
  const Result fail = call({"positivity", "--poly", "t1-t2", "--nvars", "2", "--tree", "1>2"});
  CHECK(fail.code == eqloc::cli::kCheckFailed);
  CHECK(fail.out.find("FAIL (1 terms, 1 negative)") != std::string::npos);
  CHECK(call({"positivity", "--poly", "t1", "--nvars", "2", "--tree", "1>2"}).code ==
        eqloc::cli::kMathError);
  CHECK(call({"positivity", "--poly", "t1-t2", "--nvars", "2", "--tree", "1>3"}).code ==
        eqloc::cli::kInputError);
}

TEST_CASE("JSON output") {
  const Result r = call({"--json", "omega1", "--n", "2", "--out", scratch("json").string()});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["n"] == 2);
  CHECK(j["euler_characteristic"] == "5");
  CHECK(j["degrees"][1] == "t4 + t3 - t2 - t1");
  const auto v = nlohmann::json::parse(call({"--json", "verify", "cones"}).out);
  REQUIRE(v.is_array());
  for (const auto& c : v) CHECK(c["ok"] == true);
  fs::remove_all(fs::temp_directory_path() / "eqloc_cli_test_json");
}

TEST_CASE("verify") {
  const Result list = call({"verify", "--list"});
  CHECK(list.code == 0);
  CHECK(list.out.find("omega1-small") != std::string::npos);
  CHECK(list.out.find("omega1-large") != std::string::npos);
  CHECK(call({"verify", "positivity"}).code == 0);
  CHECK(call({"verify", "nonsense"}).code == eqloc::cli::kInputError);
  CHECK_THROWS_AS(eqloc::cli::run_suite("nonsense", {}), eqloc::InvalidArgument);
}

TEST_CASE("usage errors") {
  CHECK(call({}).code == eqloc::cli::kInputError);
  CHECK(call({"frobnicate"}).code == eqloc::cli::kInputError);
  CHECK(call({"--help"}).code == 0);
}

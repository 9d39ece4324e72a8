#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using submod::cli::dispatch;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("usage errors exit 2") {
  CHECK(run({"frobnicate"}).code == submod::cli::kExitUsage);
  CHECK(run({"sweep", "--measure", "es:2"}).code == submod::cli::kExitUsage);
  CHECK(run({"sweep"}).code == submod::cli::kExitUsage);
  CHECK(run({"--format", "xml", "selftest"}).code == submod::cli::kExitUsage);
  const auto r = run({"check", "--loss", "nosuch"});
  CHECK(r.code == submod::cli::kExitUsage);
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("check reports the verdict") {
  const auto ok = run({"--format", "json", "check", "--loss", "exp:1"});
  REQUIRE(ok.code == 0);
  const auto doc = nlohmann::json::parse(ok.out);
  CHECK(doc["feasible"] == true);

  const auto bad = run({"--format", "json", "check", "--loss", "expectile:1"});
  REQUIRE(bad.code == 0);
  CHECK(nlohmann::json::parse(bad.out)["feasible"] == false);
}

TEST_CASE("sweep output is deterministic and respects expectations") {
  const std::vector<std::string> args{"--format", "json", "sweep", "--measure", "es:0.9",
                                      "--atoms",  "12",   "--trials", "500", "--seed", "3"};
  const auto a = run(args), b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(nlohmann::json::parse(a.out)["violations"] == 0);

  auto threaded = args;
  threaded.insert(threaded.begin(), {"--threads", "4"});
  CHECK(run(threaded).out == a.out);

  CHECK(run({"sweep", "--measure", "es:0.9", "--trials", "200", "--expect-violations"}).code ==
        submod::cli::kExitExpectation);
  CHECK(run({"sweep", "--measure", "var:0.5", "--atoms", "4", "--trials", "2000", "--generator", "two_point",
             "--expect-violations"})
            .code == 0);
}

TEST_CASE("csv output has a header") {
  const auto r = run({"--format", "csv", "sweep", "--measure", "el:linear", "--trials", "50"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("key,value\n", 0) == 0);
}

TEST_CASE("counterexample families") {
  const auto aes = run({"--format", "json", "counterexample", "--family", "aes", "--atoms", "1000"});
  REQUIRE(aes.code == 0);
  CHECK(nlohmann::json::parse(aes.out)["predicted_es_gap"].get<double>() == doctest::Approx(0.0416667).epsilon(1e-6));

  CHECK(run({"counterexample", "--family", "mmd", "--p", "0.6", "--q", "0.7", "--r", "0.8"}).code == 0);
  CHECK(run({"counterexample", "--family", "shortfall-jump", "--h", "0.01"}).code == 0);
  CHECK(run({"counterexample", "--family", "ce", "--loss", "arctan"}).code == 0);
  CHECK(run({"counterexample", "--family", "ce", "--loss", "exp:1"}).code == submod::cli::kExitExpectation);
  CHECK(run({"counterexample", "--family", "nope"}).code == submod::cli::kExitUsage);
}

TEST_CASE("pipeline writes a report") {
  const fs::path dir = fs::temp_directory_path() / "submod_cli_pipeline";
  fs::remove_all(dir);
  const auto r = run({"pipeline", "--synth-days", "40", "--synth-assets", "3", "--window", "15", "--out", dir.string()});
  CHECK(r.code == 0);
  CHECK(fs::exists(dir / "summary.json"));
  CHECK(fs::exists(dir / "violations.csv"));
  CHECK(run({"pipeline", "--prices", "/nonexistent.csv", "--out", dir.string()}).code == submod::cli::kExitUsage);
  fs::remove_all(dir);
}

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "exz/cli/cli.hpp"
#include "exz/error.hpp"

using namespace exz;
namespace fs = std::filesystem;

namespace {

std::string data(const char* name) { return std::string(EXZ_TEST_DATA) + "/" + name; }

struct Result {
  int code;
  std::string out, err;
};

Result exz_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const char* name) {
  fs::path p = fs::temp_directory_path() / (std::string("exz_cli_") + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("domain inspect: L-shape, square, malformed") {
  auto l = exz_run({"domain", "inspect", data("l_shape.json")});
  CHECK(l.code == 0);
  CHECK(l.out.find("1 inward corner at (1,1); full-sequence convergence predicted") != std::string::npos);
  auto s = exz_run({"domain", "inspect", data("square.json")});
  CHECK(s.code == 0);
  CHECK(s.out.find("no NCS witness; no full-sequence prediction") != std::string::npos);
  auto m = exz_run({"domain", "inspect", data("malformed.json")});
  CHECK(m.code == 2);
  CHECK(m.err.find("BadInput") != std::string::npos);
  CHECK(exz_run({"domain", "inspect", data("missing.json")}).code == 2);
}

TEST_CASE("usage errors exit 2, help exits 0") {
  CHECK(exz_run({}).code == 2);
  CHECK(exz_run({"frobnicate"}).code == 2);
  CHECK(exz_run({"zeros", data("disk.json")}).code == 2);
  CHECK(exz_run({"--help"}).code == 0);
  CHECK(exz_run({"--precision-bits", "64", "domain", "inspect", data("disk.json")}).code == 2);
}

TEST_CASE("zeros --n 50 on the disk: all at the origin") {
  auto dir = scratch("zeros");
  auto r = exz_run({"--out", dir.string(), "zeros", data("disk.json"), "--n", "50"});
  REQUIRE(r.code == 0);
  std::istringstream in(slurp(dir / "zeros_50.csv"));
  std::string line;
  std::getline(in, line);
  CHECK(line == "n,re,im");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(line == "50,0,0");
  }
  CHECK(rows == 50);
  fs::remove_all(dir);
}

TEST_CASE("bergman artifact feeds zeros --from") {
  auto dir = scratch("from");
  REQUIRE(exz_run({"--out", dir.string(), "bergman", data("l_shape.json"), "--n-max", "12"}).code == 0);
  REQUIRE(exz_run({"--out", dir.string(), "zeros", data("l_shape.json"), "--n", "12"}).code == 0);
  const std::string inline_zeros = slurp(dir / "zeros_12.csv");
  REQUIRE(exz_run({"--out", dir.string(), "zeros", data("l_shape.json"), "--n", "12", "--from", (dir / "hessenberg.json").string()})
              .code == 0);
  CHECK(slurp(dir / "zeros_12.csv") == inline_zeros);
  fs::remove_all(dir);
}

TEST_CASE("probe green --opening 1.5pi fits 2/3") {
  auto dir = scratch("green");
  auto r = exz_run({"--out", dir.string(), "probe", "green", "--opening", "1.5pi"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("exponent 0.6666") != std::string::npos);
  CHECK(r.out.find("NCS") != std::string::npos);
  CHECK(slurp(dir / "probes" / "green.csv").rfind("r,value\n", 0) == 0);
  fs::remove_all(dir);
}

TEST_CASE("config file, environment and flags in order of precedence") {
  auto dir = scratch("config");
  fs::create_directories(dir);
  std::ofstream(dir / "c.json") << R"({"precision_bits": 256, "leja_count": 40})";
  auto c = cli::load_config((dir / "c.json").string());
  CHECK(c.precision_bits == 256);
  CHECK(c.leja_count == 40);
  ::setenv("EXZ_PRECISION_BITS", "512", 1);
  cli::apply_env(c);
  CHECK(c.precision_bits == 512);
  ::setenv("EXZ_PRECISION_BITS", "lots", 1);
  CHECK_THROWS_AS(cli::apply_env(c), Error);
  ::setenv("EXZ_PRECISION_BITS", "64", 1);
  CHECK(exz_run({"domain", "inspect", data("disk.json")}).code == 2);
  CHECK(exz_run({"--precision-bits", "256", "domain", "inspect", data("disk.json")}).code == 0);
  ::unsetenv("EXZ_PRECISION_BITS");
  std::ofstream(dir / "bad.json") << R"({"leja_count": "many"})";
  CHECK(exz_run({"--config", (dir / "bad.json").string(), "domain", "inspect", data("disk.json")}).code == 2);
  fs::remove_all(dir);
}

TEST_CASE("cloud CSV weights and balayage mass") {
  auto dir = scratch("cloud");
  fs::create_directories(dir);
  std::ofstream(dir / "c.csv") << "re,im,weight\n0,0,0.25\n0.3,0.1,1/4\n-0.2,0.4,0.5\n";
  auto c = cli::read_cloud_csv((dir / "c.csv").string());
  CHECK(c.size() == 3);
  CHECK(c.total_mass() == Mass(1));
  auto r = exz_run({"--out", (dir / "o").string(), "balayage", data("disk.json"), "--cloud", (dir / "c.csv").string(), "--samples", "100"});
  CHECK(r.code == 0);
  CHECK(r.out.find("total mass 1/1") != std::string::npos);
  std::ofstream(dir / "bad.csv") << "re,im,weight\n0,0,x\n";
  CHECK_THROWS_AS(cli::read_cloud_csv((dir / "bad.csv").string()), Error);
  fs::remove_all(dir);
}

TEST_CASE("failed commands leave no partial outputs") {
  auto dir = scratch("partial");
  fs::create_directories(dir);
  std::ofstream(dir / "outside.csv") << "re,im,weight\n5,5,1\n";
  auto r = exz_run({"--out", (dir / "o").string(), "balayage", data("disk.json"), "--cloud", (dir / "outside.csv").string()});
  CHECK(r.code != 0);
  CHECK_FALSE(fs::exists(dir / "o" / "balayage.csv"));
  auto s = exz_run({"--out", (dir / "o").string(), "probe", "proof-s", data("sector_pi2.json")});
  CHECK(s.code != 0);
  CHECK_FALSE(fs::exists(dir / "o"));
  fs::remove_all(dir);
}

TEST_CASE("study and leja outputs repeat byte for byte") {
  auto dir = scratch("repeat");
  for (const char* sub : {"a", "b"})
    REQUIRE(exz_run({"--out", (dir / sub).string(), "--seed", "3", "study", data("l_shape.json"), "--n-list", "8,16",
                     "--precision-bits", "256"})
                .code == 0);
  for (const char* f : {"report.json", "leja.csv", "zeros_8.csv", "zeros_16.csv"}) {
    CHECK(fs::exists(dir / "a" / f));
    CHECK(slurp(dir / "a" / f) == slurp(dir / "b" / f));
  }
  fs::remove_all(dir);
}

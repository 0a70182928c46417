#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "growwalk/cli.hpp"
#include "growwalk/errors.hpp"

using namespace growwalk;
using doctest::Approx;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "growwalk");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("exact on a small complete graph") {
  const auto r = run({"exact", "--family", "complete", "--walk", "uniform", "--schedule", "linear:C=1",
                      "--n", "3"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("E[U]=0.37037037037037 ") != std::string::npos);
  CHECK(r.out.find("engine=closed-form") != std::string::npos);
}

TEST_CASE("CSV output is deterministic and labelled") {
  const std::vector<std::string> args = {"simulate", "--family", "path", "--schedule", "linear:C=2",
                                         "--n", "20", "--trials", "50", "--seed", "9", "--output", "-"};
  const auto a = run(args);
  const auto b = run(args);
  CHECK(a.code == kExitOk);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("# config", 0) == 0);
  const auto second = a.out.substr(a.out.find('\n') + 1);
  CHECK(second.rfind("n,", 0) == 0);
}

TEST_CASE("output directory from the environment") {
  const auto dir = std::filesystem::temp_directory_path() / "growwalk_cli_test";
  std::filesystem::create_directories(dir);
  ::setenv("GROWWALK_OUTPUT_DIR", dir.c_str(), 1);
  const auto r = run({"analyze", "--family", "path", "--n", "6"});
  ::unsetenv("GROWWALK_OUTPUT_DIR");
  CHECK(r.code == kExitOk);
  const std::string csv = slurp(dir / "analyze.csv");
  CHECK(csv.find("t_hit") != std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_CASE("theorem exit codes") {
  CHECK(run({"theorem", "T1.1-1", "--ladder", "10,100"}).code == kExitOk);
  CHECK(run({"theorem", "T1.2-1", "--C", "1", "--ladder", "8"}).code == kExitConfig);
  CHECK(run({"theorem", "nope"}).code == kExitConfig);
}

TEST_CASE("configuration errors") {
  CHECK(run({"exact", "--bogus"}).code == kExitConfig);
  const auto bad = run({"exact", "--schedule", "cubic:C=1", "--n", "4"});
  CHECK(bad.code == kExitConfig);
  CHECK(bad.err.find("--schedule") != std::string::npos);
  CHECK(run({}).code == kExitConfig);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("schedule specs") {
  CHECK(parse_schedule_spec("constant:c=3", Family::path).duration(7) == 3);
  CHECK(parse_schedule_spec("linear:C=1.5", Family::path).duration(3) == 5);
  // gamma alone follows the family convention: path uses 2 - gamma.
  CHECK(parse_schedule_spec("power:C=1,gamma=1", Family::path).duration(5) == 5);
  CHECK(parse_schedule_spec("power:C=1,gamma=0.5", Family::complete).duration(16) == 4);
  CHECK(parse_schedule_spec("power:C=2,exp=2", Family::complete).duration(3) == 18);
  CHECK_THROWS_AS(parse_schedule_spec("constant:c=0", Family::path), ConfigError);
  CHECK_THROWS_AS(parse_schedule_spec("power:C=1", Family::path), ConfigError);
  CHECK_THROWS_AS(parse_schedule_spec("linear", Family::path), ConfigError);
}

TEST_CASE("sweep over a gamma grid") {
  const auto r = run({"sweep", "--family", "complete", "--walk", "uniform", "--gammas", "0,1",
                      "--C", "1", "--ladder", "50,100,200,400", "--output", "-"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("slope") != std::string::npos);
}

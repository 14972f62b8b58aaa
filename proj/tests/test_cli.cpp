#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <initializer_list>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fqa/cli.hpp"
#include "fqa/io.hpp"
#include "fqa/zak.hpp"

using namespace fqa;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("fqa_cli_" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

struct Result {
  int code;
  std::string out, err;
};

Result run(std::initializer_list<std::string> args) {
  std::vector<std::string> owned{"fqa"};
  owned.insert(owned.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const std::string& a : owned) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("state number writes the d = 6 vacuum") {
  TempDir dir;
  const Result r = run({"state", "number", "--d", "6", "--N", "0", "--out", dir / "n.json"});
  REQUIRE(r.code == cli::kOk);
  const io::StateFile f = io::read_state(dir / "n.json");
  const double expected[] = {0.75971, 0.45004, 0.09373, 0.01365, 0.09373, 0.45004};
  for (int m = 0; m < 6; ++m) CHECK(std::abs(f.state[m] - expected[m]) < 1e-5);
}

TEST_CASE("zeros then reconstruct through files") {
  TempDir dir;
  std::mt19937_64 rng(21);
  std::normal_distribution<double> g;
  std::vector<cx> amps(5);
  for (cx& a : amps) a = cx(g(rng), g(rng));
  const FiniteState s = FiniteState::normalized(amps);
  io::write_state(dir / "s.json", s, 1.0);

  Result r = run({"zeros", "--state", dir / "s.json", "--out", dir / "z.csv", "--svg", dir / "z.svg"});
  REQUIRE(r.code == cli::kOk);
  CHECK(io::read_zeros(dir / "z.csv").size() == 5);
  CHECK(fs::exists(dir / "z.sum.json"));
  CHECK(io::read_file(dir / "z.svg").find("class=\"zero\"") != std::string::npos);

  r = run({"reconstruct", "--zeros", dir / "z.csv", "--out", dir / "r.json"});
  REQUIRE(r.code == cli::kOk);
  const FiniteState back = io::read_state(dir / "r.json").state;
  CHECK(std::abs(back.inner(s)) > 1.0 - 1e-6);
}

TEST_CASE("overlap and verify") {
  Result r = run({"overlap", "--d", "4", "--A1", "1+1i", "--A2", "0.3-0.2i", "--tol", "1e-9"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("closed") != std::string::npos);

  r = run({"verify", "--d", "4", "--seed", "7", "--suite", "all"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.out.find("checks passed") != std::string::npos);

  r = run({"verify", "--d", "3", "--suite", "zeros"});
  CHECK(r.code == cli::kOk);
}

TEST_CASE("exit codes") {
  TempDir dir;
  CHECK(run({}).code == cli::kUsage);
  CHECK(run({"bogus"}).code == cli::kUsage);
  CHECK(run({"verify", "--d", "40"}).code == cli::kUsage);
  CHECK(run({"state", "coherent", "--d", "3", "--A", "nonsense", "--out", dir / "c.json"}).code == cli::kUsage);

  io::write_atomic(dir / "bad.json", "{ \"d\": 3 ");
  Result r = run({"zeros", "--state", dir / "bad.json", "--out", dir / "z.csv"});
  CHECK(r.code == cli::kMalformedInput);
  CHECK_FALSE(r.err.empty());

  io::write_atomic(dir / "v.csv", "re,im,multiplicity\n1,1,1\n2,2,1\n3,3,1\n");
  r = run({"reconstruct", "--zeros", dir / "v.csv", "--out", dir / "v.json"});
  CHECK(r.code == cli::kVerificationFailed);
  CHECK(r.err.find("no such state exists") != std::string::npos);
  CHECK_FALSE(fs::exists(dir / "v.json"));
}

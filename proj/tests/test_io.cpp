#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <regex>

#include "fqa/io.hpp"
#include "fqa/zak.hpp"

using namespace fqa;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("fqa_io_" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::size_t count_matches(const std::string& text, const std::string& pattern) {
  const std::regex re(pattern);
  return static_cast<std::size_t>(std::distance(std::sregex_iterator(text.begin(), text.end(), re), std::sregex_iterator()));
}

}  // namespace

TEST_CASE("state JSON round trip") {
  const FiniteState s = FiniteState::normalized({cx(0.3, -0.1), cx(-1.0, 0.25), cx(0.0, 2.0), cx(1e-17, 0.5)});
  const io::StateFile back = io::state_from_json(io::state_to_json(s, 0.9));
  CHECK(back.lambda == 0.9);
  REQUIRE(back.state.dim() == 4);
  CHECK((back.state.vector() - s.vector()).norm() < 1e-15);
}

TEST_CASE("malformed state JSON") {
  CHECK_THROWS_AS(io::state_from_json("{"), io::MalformedInput);
  CHECK_THROWS_AS(io::state_from_json(R"({"d": 2, "lambda": 1})"), io::MalformedInput);
  CHECK_THROWS_AS(io::state_from_json(R"({"d": 3, "lambda": 1, "components": [[1,0],[0,1]]})"), io::MalformedInput);
  CHECK_THROWS_AS(io::state_from_json(R"({"d": 2, "lambda": -1, "components": [[1,0],[0,1]]})"), io::MalformedInput);
  CHECK_THROWS_AS(io::state_from_json(R"({"d": 2, "lambda": 1, "components": [[1],[0,1]]})"), io::MalformedInput);
  CHECK_THROWS_AS(io::state_from_json(R"({"d": 2, "lambda": 1, "components": [["a",0],[0,1]]})"), io::MalformedInput);
}

TEST_CASE("zeros CSV and sidecar") {
  const std::vector<Zero> zeros{{cx(1.0 / 3.0, 2.718281828459045), 1}, {cx(-0.0, 4.5), 2}};
  const std::vector<Zero> back = io::zeros_from_csv(io::zeros_to_csv(zeros));
  REQUIRE(back.size() == 2);
  CHECK(back[0].position == zeros[0].position);
  CHECK(back[1].multiplicity == 2);
  CHECK(io::zeros_to_csv(zeros).rfind("re,im,multiplicity", 0) == 0);
  CHECK_THROWS_AS(io::zeros_from_csv("re,im,multiplicity\n1,2\n"), io::MalformedInput);
  CHECK_THROWS_AS(io::zeros_from_csv("re,im,multiplicity\n1,2,0\n"), io::MalformedInput);

  const SumResidual r = io::sum_from_json(io::sum_to_json({1.5e-12, -2, 3}));
  CHECK(r.m == -2);
  CHECK(r.n == 3);
  CHECK(r.residual == 1.5e-12);
  CHECK(io::sidecar_path("out/zeros.csv") == fs::path("out/zeros.sum.json"));

  TempDir dir;
  const SystemParams p{4, 1.0};
  const ZeroSet zs = find_zeros(AnalyticState(number_state(0, p), p));
  io::write_zeros(dir.path / "z.csv", zs);
  CHECK(io::read_zeros(dir.path / "z.csv").size() == 4);
  CHECK(fs::exists(dir.path / "z.sum.json"));
}

TEST_CASE("complex number parsing") {
  CHECK(io::parse_complex("1+1i") == cx(1, 1));
  CHECK(io::parse_complex("0.3-0.2i") == cx(0.3, -0.2));
  CHECK(io::parse_complex("2") == cx(2, 0));
  CHECK(io::parse_complex("-1.5i") == cx(0, -1.5));
  CHECK(io::parse_complex("i") == cx(0, 1));
  CHECK(io::parse_complex("-i") == cx(0, -1));
  CHECK(io::parse_complex("1e-3+2e1i") == cx(1e-3, 20));
  CHECK_THROWS(io::parse_complex("abc"));
  CHECK_THROWS(io::parse_complex(""));
}

TEST_CASE("SVG of the vacuum zeros") {
  const SystemParams p{4, 1.0};
  const ZeroSet zs = find_zeros(AnalyticState(number_state(0, p), p));
  const std::string svg = io::render_svg(zs);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(count_matches(svg, "class=\"zero\"") == 4);
  CHECK(count_matches(svg, "class=\"cell\"") == 1);
  CHECK(count_matches(svg, "class=\"overlay\"") == 0);
  CHECK(count_matches(io::render_svg(zs, &zs), "class=\"overlay\"") == 4);
}

TEST_CASE("wavefunction CSV") {
  TempDir dir;
  const fs::path f = dir.path / "psi.csv";
  {
    std::ofstream out(f);
    out << "x,re,im\n";
    for (int k = 0; k <= 200; ++k) {
      const double x = -10.0 + 0.1 * k;
      out << x << "," << std::exp(-0.5 * x * x) << ",0\n";
    }
  }
  const SampledGrid g = io::read_wavefunction(f);
  CHECK(g.values().size() == 201);
  CHECK(g.spacing() == doctest::Approx(0.1));
  CHECK(std::abs(g.at(0.0) - 1.0) < 1e-12);

  std::ofstream(dir.path / "bad.csv") << "0,1,0\n0.1,1\n";
  CHECK_THROWS_AS(io::read_wavefunction(dir.path / "bad.csv"), io::MalformedInput);
}

TEST_CASE("atomic write replaces the target") {
  TempDir dir;
  const fs::path f = dir.path / "a.json";
  io::write_atomic(f, "first");
  io::write_atomic(f, "second");
  CHECK(io::read_file(f) == "second");
  std::size_t n = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir.path)) ++n;
  CHECK(n == 1);
  CHECK_THROWS(io::read_file(dir.path / "missing"));
}

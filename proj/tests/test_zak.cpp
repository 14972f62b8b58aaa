#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <random>
#include <stdexcept>

#include "fqa/zak.hpp"
#include "oracles.hpp"

using namespace fqa;
using oracle::kPi;

namespace {

const cx I(0.0, 1.0);

double dist(const FiniteState& a, const FiniteState& b) { return (a.vector() - b.vector()).norm(); }
double dist(const FiniteState& a, const Eigen::VectorXcd& b) { return (a.vector() - b).norm(); }

}  // namespace

TEST_CASE("number states reproduce the d = 6 eigenvector table") {
  const std::array<std::pair<int, std::array<double, 6>>, 6> table{{
      {0, {0.75971, 0.45004, 0.09373, 0.01365, 0.09373, 0.45004}},
      {1, {0, 0.65328, 0.27060, 0, -0.27060, -0.65328}},
      {2, {-0.52546, 0.34071, 0.48131, 0.16851, 0.48131, 0.34071}},
      {3, {0, -0.27059, 0.65328, 0, -0.65328, 0.27059}},
      {4, {0.37040, -0.37823, 0.37471, 0.54393, 0.37471, -0.37823}},
      {6, {-0.31449, 0.28578, -0.15803, 0.82934, -0.15803, 0.28578}},
  }};
  const SystemParams p{6, 1.0};
  for (const auto& [n, col] : table) {
    const FiniteState s = number_state(n, p);
    for (int m = 0; m < 6; ++m) {
      CAPTURE(n);
      CAPTURE(m);
      CHECK(std::abs(s[m] - col[m]) <= 2e-5);
    }
  }
  CHECK(dist(number_state(5, p), -number_state(1, p).vector()) < 1e-10);
}

TEST_CASE("number states are eigenvectors of the Fourier matrix") {
  for (int d : {4, 5, 6, 7}) {
    const FiniteOperator f = fourier_matrix(d);
    cx phase = 1.0;
    for (int n = 0; n <= 12; ++n, phase *= I) {
      CAPTURE(d);
      CAPTURE(n);
      if (d == 4 && n % 4 == 3) {
        CHECK_THROWS_AS(number_state(n, SystemParams{d, 1.0}), ZakError);
        continue;
      }
      const FiniteState s = number_state(n, SystemParams{d, 1.0});
      CHECK(dist(f.apply(s), phase * s.vector()) < 1e-10);
    }
  }
}

TEST_CASE("the six tabulated number states span the space") {
  Eigen::MatrixXcd m(6, 6);
  int col = 0;
  for (int n : {0, 1, 2, 3, 4, 6}) m.col(col++) = number_state(n, SystemParams{6, 1.0}).vector();
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(m).singularValues();
  CHECK(sv(5) > 1e-8);
}

TEST_CASE("high Hermite indices stay finite") {
  for (int n : {30, 40, 50}) {
    const FiniteState s = zak_map(HermiteNumber{n}, SystemParams{7, 1.0});
    CHECK(s.is_normalized());
    for (const cx& a : s.amplitudes()) CHECK(std::isfinite(std::abs(a)));
  }
}

TEST_CASE("number states need unit lambda") {
  CHECK_THROWS_AS(number_state(0, SystemParams{4, 1.25}), std::invalid_argument);
  CHECK_THROWS_AS(number_state(-1, SystemParams{4, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(coherent_from_number(0.1, SystemParams{4, 0.8}, 5), std::invalid_argument);
}

TEST_CASE("momentum transform") {
  const SystemParams p5{5, 1.0};
  const FiniteState x = zak_map(HermiteNumber{1}, p5);
  const FiniteState k = momentum_zak_map(HermiteNumber{1}, p5);
  CHECK(dist(k, fourier_matrix(5).adjoint().apply(x)) < 1e-10);
  // and <<P;m|psi>> componentwise
  for (int m = 0; m < 5; ++m) CHECK(std::abs(k[m] - momentum_state(m, 5).inner(x)) < 1e-10);

  const SystemParams p6{6, 1.0};
  CHECK(dist(momentum_zak_map(HermiteNumber{2}, p6), -zak_map(HermiteNumber{2}, p6).vector()) < 1e-10);

  for (double lam : {0.8, 1.0, 1.25}) {
    const SystemParams p{5, lam};
    const Wavefunction g = GaussianCoherent{cx(0.4, -0.3)};
    const double ratio = momentum_zak_transform(g, p).normalization / zak_transform(g, p).normalization;
    CHECK(std::abs(ratio / (lam * lam) - 1.0) < 1e-8);
  }
}

TEST_CASE("coherent states: lattice sum and theta form agree") {
  std::mt19937_64 rng(3);
  for (double lam : {1.0, 0.8, 1.25}) {
    const SystemParams p{4, lam};
    for (int k = 0; k < 5; ++k) {
      const cx a = oracle::random_in_cell(p, rng);
      const FiniteState closed = coherent_state_closed(a, p);
      CHECK(closed.is_normalized());
      CHECK(dist(zak_map(GaussianCoherent{a}, p), closed) < 1e-12);
      CHECK(dist(closed, oracle::coherent_by_lattice(a, p)) < 1e-12);
    }
  }
}

TEST_CASE("coherent normalization: closed form against the direct sum") {
  std::mt19937_64 rng(4);
  for (int d = 1; d <= 7; ++d)
    for (double lam : {0.8, 1.0, 1.3}) {
      const SystemParams p{d, lam};
      for (int k = 0; k < 5; ++k) {
        const cx a = oracle::random_in_cell(p, rng) * 1.5;
        double direct = 0.0;
        for (const cx& v : coherent_amplitudes_raw(a, p)) direct += std::norm(v);
        CHECK(std::abs(coherent_normalization(a, p) - direct) <= 1e-10 * direct);
      }
    }
}

TEST_CASE("vacuum") {
  for (int d : {2, 3, 4, 5}) {
    const SystemParams p{d, 1.0};
    const FiniteState v = coherent_state_closed(0.0, p);
    const double t0 = oracle::theta3(0.0, I / double(d)).real();
    for (int m = 0; m < d; ++m) {
      CHECK(v[m].real() > 0.0);
      CHECK(std::abs(v[m].imag()) < 1e-15);
      const double tm = oracle::theta3(kPi * m / d, I / double(d)).real();
      CHECK(std::abs(v[m].real() / v[0].real() - tm / t0) < 1e-12);
    }
  }
}

TEST_CASE("coherent quasi-periodicity") {
  const SystemParams p{4, 1.0};
  const cx a(0.7, 0.45);
  const FiniteState s0 = coherent_state_closed(a, p);
  const FiniteState s1 = coherent_state_closed(a + p.real_period(), p);
  const cx phase = std::exp(I * a.imag() * p.lambda * std::sqrt(kPi * p.d / 2.0));
  CHECK(dist(s1, phase * s0.vector()) < 1e-12);
}

TEST_CASE("coherent states orthogonal to a position state") {
  const SystemParams p{5, 1.0};
  const int m = 2;
  const double s = std::sqrt(2.0 * kPi / 5);
  const cx a = s * cx((0 * 5 + 2.5 + m) * p.lambda, 1.0 / (2.0 * p.lambda));
  const std::vector<cx> raw = coherent_amplitudes_raw(a, p);
  CHECK(std::abs(raw[m]) < 1e-14);
}

TEST_CASE("coherent overlaps") {
  std::mt19937_64 rng(5);
  for (int d : {3, 4, 5, 6}) {
    const SystemParams p{d, d == 4 ? 1.2 : 1.0};
    for (int k = 0; k < 20; ++k) {
      const cx a1 = oracle::random_in_cell(p, rng), a2 = oracle::random_in_cell(p, rng);
      const cx direct = coherent_state_closed(a1, p).inner(coherent_state_closed(a2, p));
      CHECK(std::abs(coherent_overlap(a1, a2, p) - direct) < 1e-9);
      if (d % 2 == 1) CHECK(std::abs(coherent_overlap_general(a1, a2, p) - direct) < 1e-9);
      if (d % 2 == 0) CHECK(std::abs(coherent_overlap_even(a1, a2, p) - direct) < 1e-9);
    }
    CHECK(std::abs(coherent_overlap(cx(0.2, 0.9), cx(0.2, 0.9), p) - 1.0) < 1e-12);
  }
  const SystemParams p5{5, 1.0};
  const cx direct = coherent_state_closed(0.3, p5).inner(coherent_state_closed(cx(0.1, 0.2), p5));
  CHECK(std::abs(coherent_overlap(0.3, cx(0.1, 0.2), p5) - direct) < 1e-12);

  // even d: the first factor vanishes on a shifted lattice
  const SystemParams p4{4, 1.0};
  const cx a1(0.3, -0.4);
  for (int l = 0; l < 2; ++l)
    for (int k = 0; k < 2; ++k) {
      const cx a2 = std::conj(a1) + (l + 0.5) * std::sqrt(2.0 * kPi * 4) + I * double(2 * k + 1) * std::sqrt(2.0 * kPi / 4);
      CHECK(std::abs(coherent_overlap(a1, a2, p4)) < 1e-12);
      CHECK(std::abs(coherent_state_closed(a1, p4).inner(coherent_state_closed(a2, p4))) < 1e-12);
    }
}

TEST_CASE("resolution of identity from d^2 coherent states") {
  for (int d : {3, 4}) {
    const SystemParams p{d, 1.0};
    const cx a(0.3, 0.2);
    const double s = std::sqrt(2.0 * kPi / d);
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(d, d);
    for (int al = 0; al < d; ++al)
      for (int be = 0; be < d; ++be) {
        const Eigen::VectorXcd v = coherent_state_closed(a + s * cx(be * p.lambda, al / p.lambda), p).vector();
        acc += v * v.adjoint();
      }
    CHECK((acc / double(d) - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("displacement moves coherent states") {
  for (int d : {3, 4}) {
    for (double lam : {1.0, 1.3}) {
      const SystemParams p{d, lam};
      const cx a(0.35, -0.6);
      const double s = std::sqrt(2.0 * kPi / d);
      const double h = std::sqrt(kPi / (2.0 * d));
      for (long al = 0; al < d; ++al)
        for (long be = 0; be < d; ++be) {
          const FiniteState lhs = displaced_state(coherent_state_closed(a, p), {al, be});
          const cx phase = std::exp(I * (-a.imag() * lam * h * double(be) + a.real() / lam * h * double(al)));
          const FiniteState rhs = coherent_state_closed(a + s * cx(be * lam, al / lam), p);
          CHECK(dist(lhs, phase * rhs.vector()) < 1e-12);
        }
    }
  }
}

TEST_CASE("coherent states from number states") {
  const SystemParams p{4, 1.0};
  CHECK(dist(coherent_from_number(0.0, p, 10), number_state(0, p)) < 1e-12);
  CHECK(dist(coherent_from_number(0.5, p, 40), coherent_state_closed(0.5, p)) < 1e-8);
  const FiniteState target = coherent_state_closed(1.0, p);
  double prev = INFINITY;
  for (int n = 2; n <= 30; ++n) {
    const double e = dist(coherent_from_number(1.0, p, n), target);
    CHECK(e <= prev + 1e-15);
    prev = e;
  }
  CHECK(prev < 1e-10);
}

TEST_CASE("twisted sectors and inversion") {
  const SystemParams p3{3, 1.0};
  const Wavefunction g = GaussianCoherent{cx(0.2, 0.3)};
  const ZakSector sec{0.3, 0.45};
  for (long m = 0; m < 3; ++m) {
    const cx lhs = zak_component_raw(g, p3, sec, m + 3);
    const cx rhs = std::exp(2.0 * kPi * I * sec.sigma1) * zak_component_raw(g, p3, sec, m);
    CHECK(std::abs(lhs - rhs) < 1e-13);
  }
  const ZakSector r = ZakSector::reduced(1.25, -0.25);
  CHECK(r.sigma1 == doctest::Approx(0.25));
  CHECK(r.sigma2 == doctest::Approx(0.75));

  const SystemParams p4{4, 1.0};
  const ZakFamily fam = build_zak_family(g, p4, 0.0, 64);
  CHECK(dist(fam.members[0].state, zak_map(g, p4)) < 1e-14);
  for (long m = 0; m < 4; ++m)
    for (long w = -1; w <= 1; ++w) {
      const double x = zak_sample_point(p4, 0.0, m, w);
      CHECK(std::abs(inverse_zak(fam, m, w) - evaluate(g, x)) < 1e-8);
    }
  const ZakFamily twisted = build_zak_family(g, p4, 0.37, 64);
  CHECK(std::abs(inverse_zak(twisted, 1, 0) - evaluate(g, zak_sample_point(p4, 0.37, 1, 0))) < 1e-8);

  // a coarse grid cannot resolve a wide wavefunction and says so
  const ZakFamily coarse = build_zak_family(HermiteNumber{12}, SystemParams{1, 0.3}, 0.0, 4);
  CHECK_THROWS_AS(inverse_zak(coarse, 0, 1, 1e-12), ZakError);
  CHECK_THROWS_AS(build_zak_family(g, p4, 0.0, 3), std::invalid_argument);
}

TEST_CASE("sampled wavefunctions") {
  const SystemParams p{4, 1.0};
  const cx a(0.3, -0.2);
  std::vector<cx> vals;
  const double h = 0.01;
  for (int k = 0; k <= 2400; ++k) vals.push_back(evaluate(GaussianCoherent{a}, -12.0 + h * k));
  const SampledGrid grid(-12.0, h, vals);
  CHECK(dist(zak_map(grid, p), coherent_state_closed(a, p)) < 1e-6);
  CHECK(dist(momentum_zak_map(grid, p), momentum_zak_map(GaussianCoherent{a}, p)) < 1e-6);

  std::vector<cx> narrow;
  for (int k = 0; k <= 200; ++k) narrow.push_back(evaluate(GaussianCoherent{a}, -1.0 + h * k));
  CHECK_THROWS_AS(zak_map(SampledGrid(-1.0, h, narrow), p), ZakError);
}

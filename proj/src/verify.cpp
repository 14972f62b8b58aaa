#include "fqa/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "fqa/analytic.hpp"
#include "fqa/finite_hilbert.hpp"
#include "fqa/theta.hpp"
#include "fqa/zak.hpp"
#include "fqa/zeros.hpp"

namespace fqa::verify {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kRandomStates = 5;

std::string sci(double v) {
  std::ostringstream os;
  os.precision(2);
  os << std::scientific << v;
  return os.str();
}

Check bounded(std::string name, double worst, double tol) {
  return Check{std::move(name), worst <= tol, "max error " + sci(worst) + " (tol " + sci(tol) + ")"};
}

cx random_point(const SystemParams& p, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return {p.cell_a + u(rng) * p.real_period(), p.cell_b + u(rng) * p.imag_period()};
}

Check fourier(int d, std::mt19937_64&) {
  const SystemParams p{d, 1.0};
  const FiniteOperator f = fourier_matrix(d);
  double worst = 0.0;
  cx phase = 1.0;
  // Unnormalized images, scaled to unit sample energy, so that images which
  // vanish identically still take part.
  const double scale = std::sqrt(p.position_step());
  for (int n = 0; n <= 12; ++n, phase *= cx(0.0, 1.0)) {
    Eigen::VectorXcd v(d);
    for (int m = 0; m < d; ++m) v(m) = scale * zak_component_raw(HermiteNumber{n}, p, {}, m);
    worst = std::max(worst, (f.matrix() * v - phase * v).norm());
  }
  return bounded("number states are Fourier eigenvectors", worst, 1e-10);
}

double resolution_error(const FiniteState& fiducial) {
  const int d = fiducial.dim();
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(d, d);
  for (long a = 0; a < d; ++a)
    for (long b = 0; b < d; ++b) {
      const Eigen::VectorXcd v = displaced_state(fiducial, {a, b}).vector();
      acc += v * v.adjoint();
    }
  acc /= static_cast<double>(d);
  return (acc - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff();
}

Check resolution(int d, std::mt19937_64& rng) {
  double worst = resolution_error(random_state(d, rng));
  worst = std::max(worst, resolution_error(coherent_state_closed(cx(0.3, 0.2), SystemParams{d, 1.0})));
  return bounded("displaced-state resolution of identity", worst, 1e-9);
}

Check weyl(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = cx(g(rng), g(rng));
  const FiniteOperator op(m);
  return bounded("Weyl expansion reproduces the operator",
                 operator_from_weyl(weyl_function(op), d).max_abs_diff(op), 1e-10);
}

Check overlap(int d, std::mt19937_64& rng) {
  const SystemParams p{d, 1.0};
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const cx a1 = random_point(p, rng), a2 = random_point(p, rng);
    const cx direct = coherent_state_closed(a1, p).inner(coherent_state_closed(a2, p));
    worst = std::max(worst, std::abs(coherent_overlap(a1, a2, p) - direct));
  }
  return bounded("coherent overlap closed form", worst, 1e-9);
}

Check theta_identities(int, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> t(0.3, 2.0);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const cx z(u(rng), u(rng));
    const cx tau(u(rng), t(rng));
    const cx base = theta::theta3(z, tau);
    const cx shifted = theta::theta3(z + kPi * tau, tau) * std::exp(cx(0.0, 1.0) * (kPi * tau + 2.0 * z));
    worst = std::max(worst, std::abs(shifted - base) / std::abs(base));
    worst = std::max(worst, std::abs(theta::theta3(z + kPi, tau) - base) / std::abs(base));
  }
  return bounded("theta quasi-periodicity", worst, 1e-10);
}

Check zeros_and_reconstruction(int d, std::mt19937_64& rng) {
  const SystemParams p{d, 1.0};
  double worst_sum = 0.0;
  double worst_fid = 0.0;
  for (int k = 0; k < kRandomStates; ++k) {
    const FiniteState s = random_state(d, rng);
    const ZeroSet zs = find_zeros(AnalyticState(s, p));
    if (zs.total_multiplicity() != d) return Check{"zeros and reconstruction", false, "wrong zero count"};
    worst_sum = std::max(worst_sum, zs.residual);
    const FiniteState back = reconstruct_from_zeros(ReconstructionInput{zs.zeros, p, zs.m, zs.n});
    worst_fid = std::max(worst_fid, 1.0 - fidelity(s, back));
  }
  Check c{"zeros and reconstruction", worst_sum <= kSumConstraintTol && worst_fid <= 1e-10,
          "sum residual " + sci(worst_sum) + ", fidelity loss " + sci(worst_fid)};
  return c;
}

Check completeness(int d, std::mt19937_64& rng) {
  const SystemParams p{d, 1.0};
  const ZeroSet zs = find_zeros(AnalyticState(random_state(d, rng), p));
  std::vector<cx> pts;
  for (const Zero& z : zs.zeros)
    for (int m = 0; m < z.multiplicity; ++m) pts.push_back(z.position);
  bool ok = classify_completeness(pts, p).kind == Completeness::undercomplete;
  std::vector<cx> moved = pts;
  moved[0] = reduce_into_cell(moved[0] + 0.5, p);
  ok = ok && classify_completeness(moved, p).kind == Completeness::complete;
  std::vector<cx> extra = moved;
  extra.push_back(random_point(p, rng));
  ok = ok && classify_completeness(extra, p).kind == Completeness::overcomplete_at_least_complete;
  moved.pop_back();
  ok = ok && classify_completeness(moved, p).kind == Completeness::undercomplete;
  return Check{"completeness classification", ok, ok ? "all four cases" : "misclassified"};
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) h = (h ^ c) * 1099511628211ull;
  return h;
}

using CheckFn = std::function<Check(int, std::mt19937_64&)>;

const std::vector<std::pair<std::string, CheckFn>>& registry() {
  static const std::vector<std::pair<std::string, CheckFn>> r{
      {"fourier", fourier},       {"resolution", resolution}, {"weyl", weyl},
      {"overlap", overlap},       {"theta", theta_identities}, {"zeros", zeros_and_reconstruction},
      {"completeness", completeness},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n{"all"};
    for (const auto& [name, fn] : registry()) n.push_back(name);
    return n;
  }();
  return names;
}

std::vector<Check> run_suite(const std::string& suite, int d, std::uint64_t seed) {
  if (d < 2) throw std::invalid_argument("verify needs d >= 2");
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end())
    throw std::invalid_argument("unknown suite '" + suite + "'");
  std::vector<Check> out;
  for (const auto& [name, fn] : registry()) {
    if (suite != "all" && suite != name) continue;
    // Each suite draws from its own stream so results do not depend on which ran before.
    std::mt19937_64 rng(seed ^ fnv1a(name));
    try {
      out.push_back(fn(d, rng));
    } catch (const std::exception& e) {
      out.push_back(Check{name, false, std::string("threw: ") + e.what()});
    }
  }
  return out;
}

}  // namespace fqa::verify

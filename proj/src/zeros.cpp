#include "fqa/zeros.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <Eigen/Dense>

#include "fqa/theta.hpp"

namespace fqa {
namespace {

constexpr double kPi = std::numbers::pi;

constexpr int kEdgeSamplesCell = 64;
constexpr int kEdgeSamplesBox = 12;
constexpr int kMaxEdgeDepth = 40;
constexpr double kBoundaryFloor = 1e-14;   // |f| at a midpoint, relative to its segment ends
constexpr double kJitterFraction = 1e-3;
constexpr int kJitterAttempts = 12;
constexpr double kClusterDiameter = 1e-8;
constexpr double kStuckClusterDiameter = 1e-5;
constexpr double kNewtonResidual = 1e-10;  // |f| at an accepted zero, relative to the cell scale
constexpr int kNewtonIterations = 60;
constexpr int kMaxBoxes = 200000;
constexpr double kMergeDistance = 1e-10;
// A zero of multiplicity m is only resolvable to about eps^{1/m}: rounding
// splits it into m simple zeros that close together.
constexpr double kClusterMerge = 2e-6;  // relative to the cell diameter
constexpr double kMaxCondition = 1e10;
// Cluster test: boxes below this fraction of the cell diameter with winding
// m >= 2 have their zero moments taken on an enclosing circle.
constexpr double kClusterProbe = 1.0;
constexpr double kClusterNoise = 1e-12;  // spread limit is kClusterNoise^{1/m} cell diameters
constexpr int kMomentPoints = 128;

struct BoundaryHit {};

// Phase tracking of f along rectangle boundaries. A segment is accepted once
// both halves turn by less than pi/2 and |f'/f| times its length stays below
// one radian at the ends and the midpoint. The second test rules out a
// segment passing close to a cluster of zeros, where the total turn can
// exceed pi and alias.
class WindingCounter {
 public:
  explicit WindingCounter(const AnalyticState& s) : s_(s) {}

  int winding(const Rect& r, int samples_per_edge) const {
    const cx corners[5] = {r.lo, cx(r.hi.real(), r.lo.imag()), r.hi, cx(r.lo.real(), r.hi.imag()), r.lo};
    double total = 0.0;
    cx prev_z = corners[0];
    Sample prev = eval(prev_z);
    const Sample first = prev;
    for (int e = 0; e < 4; ++e) {
      for (int k = 1; k <= samples_per_edge; ++k) {
        const cx z = corners[e] + (corners[e + 1] - corners[e]) * (static_cast<double>(k) / samples_per_edge);
        const Sample cur = (e == 3 && k == samples_per_edge) ? first : eval(z);
        total += segment(prev_z, z, prev, cur, 0);
        prev_z = z;
        prev = cur;
      }
    }
    const double turns = total / (2.0 * kPi);
    const double rounded = std::round(turns);
    if (std::abs(turns - rounded) > 1e-6) throw BoundaryHit{};
    return static_cast<int>(rounded);
  }

 private:
  struct Sample {
    cx f;
    double rate;  // |f'/f|
  };

  Sample eval(cx z) const {
    const cx v = eval_f(s_, z);
    if (!(std::abs(v) > std::numeric_limits<double>::min())) throw BoundaryHit{};
    return {v, std::abs(eval_f_derivative(s_, z) / v)};
  }

  double segment(cx a, cx b, const Sample& sa, const Sample& sb, int depth) const {
    const cx m = 0.5 * (a + b);
    const Sample sm = eval(m);
    // A zero this close to the boundary would need the whole depth budget.
    if (std::abs(sm.f) < kBoundaryFloor * std::max(std::abs(sa.f), std::abs(sb.f))) throw BoundaryHit{};
    const double da = std::arg(sm.f / sa.f);
    const double db = std::arg(sb.f / sm.f);
    const double len = std::abs(b - a);
    const bool smooth = std::max({sa.rate, sb.rate, sm.rate}) * len < 1.0;
    if (smooth && std::abs(da) < 0.5 * kPi && std::abs(db) < 0.5 * kPi) return da + db;
    if (depth >= kMaxEdgeDepth) throw BoundaryHit{};
    return segment(a, m, sa, sm, depth + 1) + segment(m, b, sm, sb, depth + 1);
  }

  const AnalyticState& s_;
};

double boundary_scale(const AnalyticState& s, const Rect& r) {
  double peak = 0.0;
  constexpr int n = 128;
  const cx corners[5] = {r.lo, cx(r.hi.real(), r.lo.imag()), r.hi, cx(r.lo.real(), r.hi.imag()), r.lo};
  for (int e = 0; e < 4; ++e)
    for (int k = 0; k < n; ++k)
      peak = std::max(peak, std::abs(eval_f(s, corners[e] + (corners[e + 1] - corners[e]) * (k + 0.37) / double(n))));
  return peak;
}

Rect jittered(const Rect& r, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-kJitterFraction, kJitterFraction);
  const cx lo = r.lo + cx(u(rng) * r.width(), u(rng) * r.height());
  const cx hi = r.hi + cx(u(rng) * r.width(), u(rng) * r.height());
  return Rect{lo, hi};
}

// p_k = (1/2 pi i) \oint (z - c)^k f'/f dz, k = 0, 1, 2, on the circle |z - c| = r.
std::array<cx, 3> contour_moments(const AnalyticState& s, cx c, double r, int n) {
  std::array<cx, 3> p{0.0, 0.0, 0.0};
  for (int j = 0; j < n; ++j) {
    const cx e = std::polar(1.0, 2.0 * kPi * j / n);
    const cx z = c + r * e;
    const cx fz = eval_f(s, z);
    if (fz == 0.0) throw BoundaryHit{};
    const cx w = eval_f_derivative(s, z) / fz * r * e / static_cast<double>(n);
    p[0] += w;
    p[1] += w * (r * e);
    p[2] += w * (r * e) * (r * e);
  }
  return p;
}

struct Box {
  Rect rect;
  int winding;
};

std::string describe(const std::vector<Zero>& found) {
  std::ostringstream os;
  os << found.size() << " zero(s) located before failure:";
  for (const Zero& z : found) os << " (" << z.position.real() << "," << z.position.imag() << ")x" << z.multiplicity;
  return os.str();
}

}  // namespace

int ZeroSet::total_multiplicity() const {
  int t = 0;
  for (const Zero& z : zeros) t += z.multiplicity;
  return t;
}

Rect fundamental_cell(const SystemParams& p) {
  p.validate();
  return Rect{p.cell_origin(), p.cell_origin() + cx(p.real_period(), p.imag_period())};
}

cx reduce_into_cell(cx z, const SystemParams& p) {
  auto wrap = [](double x, double origin, double period) {
    double r = x - period * std::floor((x - origin) / period);
    if (r >= origin + period) r -= period;
    if (r < origin) r += period;
    return r;
  };
  return {wrap(z.real(), p.cell_a, p.real_period()), wrap(z.imag(), p.cell_b, p.imag_period())};
}

cx zero_sum_offset(const SystemParams& p) {
  return std::sqrt(kPi / 2.0) * std::pow(static_cast<double>(p.d), 1.5) * cx(p.lambda, 1.0 / p.lambda);
}

int count_zeros(const AnalyticState& s, Rect region) {
  if (!(region.width() > 0.0) || !(region.height() > 0.0))
    throw std::invalid_argument("count_zeros: region must have positive width and height");
  const WindingCounter counter(s);
  std::mt19937_64 rng(0x5eed);
  Rect r = region;
  for (int attempt = 0; attempt < kJitterAttempts; ++attempt) {
    try {
      return counter.winding(r, kEdgeSamplesCell);
    } catch (const BoundaryHit&) {
      r = jittered(region, rng);
    }
  }
  throw ZeroFindingError("count_zeros: f vanishes on the region boundary after " +
                         std::to_string(kJitterAttempts) + " jitter attempts");
}

namespace {

ZeroSet search_zeros(const AnalyticState& s, std::uint64_t seed) {
  const SystemParams& p = s.params();
  const Rect cell = fundamental_cell(p);
  const double scale = boundary_scale(s, cell);
  const WindingCounter counter(s);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(-kJitterFraction, kJitterFraction);

  // Any lattice translate of the cell is a fundamental domain; shifting it
  // slightly down-left keeps zeros on the cell edges strictly inside.
  Box root{};
  bool have_root = false;
  for (int attempt = 0; attempt < kJitterAttempts && !have_root; ++attempt) {
    const double fx = 1e-4 + 1e-3 * (0.5 + jitter(rng) / kJitterFraction * 0.5);
    const double fy = 1e-4 + 1e-3 * (0.5 + jitter(rng) / kJitterFraction * 0.5);
    const cx shift(-fx * cell.width(), -fy * cell.height());
    const Rect r{cell.lo + shift, cell.hi + shift};
    try {
      root = Box{r, counter.winding(r, kEdgeSamplesCell)};
      have_root = true;
    } catch (const BoundaryHit&) {
    }
  }
  if (!have_root) throw ZeroFindingError("find_zeros: could not place the cell boundary away from zeros");
  if (root.winding != p.d)
    throw ZeroFindingError("find_zeros: cell winding " + std::to_string(root.winding) + " differs from d = " +
                           std::to_string(p.d));

  std::vector<Zero> found;
  std::vector<Box> work{root};
  int processed = 0;

  // Iterate until the step stalls at rounding level; |f| relative to the
  // boundary scale is a loose test inside the cell, where f spans many orders.
  auto newton = [&](const Rect& r) -> std::optional<cx> {
    cx z = 0.5 * (r.lo + r.hi);
    double last_step = std::numeric_limits<double>::infinity();
    for (int it = 0; it < kNewtonIterations; ++it) {
      const cx fz = eval_f(s, z);
      if (fz == 0.0) {
        last_step = 0.0;
        break;
      }
      const cx dz = eval_f_derivative(s, z);
      if (dz == 0.0) return std::nullopt;
      const cx step = fz / dz;
      const double len = std::abs(step);
      if (!std::isfinite(len)) return std::nullopt;
      // Past convergence the step is noise; stop once it no longer shrinks.
      if (len >= last_step && len <= 1e-10 * (1.0 + std::abs(z))) break;
      z -= step;
      last_step = len;
      // Wandered off: let subdivision narrow the box instead.
      if (!r.contains(z, r.diameter())) return std::nullopt;
      if (len <= 1e-15 * (1.0 + std::abs(z))) break;
    }
    if (!(last_step <= 1e-9 * (1.0 + std::abs(z)))) return std::nullopt;
    if (!r.contains(z, 1e-9 * r.diameter())) return std::nullopt;
    if (std::abs(eval_f(s, z)) > kNewtonResidual * scale) return std::nullopt;
    return z;
  };

  auto split = [&](const Box& b) -> std::optional<std::vector<Box>> {
    for (int attempt = 0; attempt < kJitterAttempts; ++attempt) {
      const double xm = b.rect.lo.real() + b.rect.width() * (0.5 + jitter(rng));
      const double ym = b.rect.lo.imag() + b.rect.height() * (0.5 + jitter(rng));
      const Rect quads[4] = {
          {b.rect.lo, cx(xm, ym)},
          {cx(xm, b.rect.lo.imag()), cx(b.rect.hi.real(), ym)},
          {cx(b.rect.lo.real(), ym), cx(xm, b.rect.hi.imag())},
          {cx(xm, ym), b.rect.hi},
      };
      try {
        std::vector<Box> kids;
        int total = 0;
        for (const Rect& q : quads) {
          const int w = counter.winding(q, kEdgeSamplesBox);
          total += w;
          if (w != 0) kids.push_back({q, w});
        }
        if (total == b.winding) return kids;
      } catch (const BoundaryHit&) {
      }
    }
    return std::nullopt;
  };

  while (!work.empty()) {
    if (++processed > kMaxBoxes)
      throw ZeroFindingError("find_zeros: subdivision budget exhausted; " + describe(found));
    const Box b = work.back();
    work.pop_back();
    if (b.winding < 0) throw ZeroFindingError("find_zeros: negative winding; " + describe(found));
    if (b.winding == 0) continue;
    if (b.winding == 1) {
      if (auto z = newton(b.rect)) {
        found.push_back({*z, 1});
        continue;
      }
    }
    if (b.winding >= 2 && b.rect.diameter() < kClusterProbe * cell.diameter()) {
      // Rounding splits an m-fold zero into m zeros about eps^{1/m} apart,
      // which no refinement can separate; their centroid stays well defined.
      const cx c = 0.5 * (b.rect.lo + b.rect.hi);
      const double r = 0.75 * b.rect.diameter();
      try {
        const auto coarse = contour_moments(s, c, r, kMomentPoints / 2);
        const auto fine = contour_moments(s, c, r, kMomentPoints);
        const double m = static_cast<double>(b.winding);
        if (std::abs(fine[0] - m) < 1e-6 && std::abs(fine[1] - coarse[1]) < 1e-8 * r * m) {
          const cx mean = fine[1] / m;
          const double spread = std::sqrt(std::abs(fine[2] / m - mean * mean));
          if (spread <= std::pow(kClusterNoise, 1.0 / m) * cell.diameter()) {
            found.push_back({c + mean, b.winding});
            continue;
          }
        }
      } catch (const BoundaryHit&) {
      }
    }
    if (b.rect.diameter() < kClusterDiameter) {
      found.push_back({0.5 * (b.rect.lo + b.rect.hi), b.winding});
      continue;
    }
    auto kids = split(b);
    if (!kids) {
      if (b.rect.diameter() < kStuckClusterDiameter) {
        found.push_back({0.5 * (b.rect.lo + b.rect.hi), b.winding});
        continue;
      }
      std::ostringstream os;
      os << "find_zeros: could not subdivide a box of winding " << b.winding << " and diameter " << b.rect.diameter()
         << " at (" << b.rect.lo.real() << "," << b.rect.lo.imag() << "); " << describe(found);
      throw ZeroFindingError(os.str());
    }
    for (Box& k : *kids) work.push_back(k);
  }

  // Single-linkage merge; the multiplicity-weighted mean keeps the zero sum.
  const double merge = kClusterMerge * cell.diameter();
  for (bool merged = true; merged;) {
    merged = false;
    for (std::size_t i = 0; i < found.size() && !merged; ++i)
      for (std::size_t j = i + 1; j < found.size() && !merged; ++j) {
        if (std::abs(found[i].position - found[j].position) >= merge) continue;
        const int m = found[i].multiplicity + found[j].multiplicity;
        found[i].position = (double(found[i].multiplicity) * found[i].position +
                             double(found[j].multiplicity) * found[j].position) / double(m);
        found[i].multiplicity = m;
        found.erase(found.begin() + static_cast<std::ptrdiff_t>(j));
        merged = true;
      }
  }

  ZeroSet zs;
  zs.params = p;
  for (Zero z : found) {
    z.position = reduce_into_cell(z.position, p);
    zs.zeros.push_back(z);
  }
  std::sort(zs.zeros.begin(), zs.zeros.end(), [](const Zero& a, const Zero& b) {
    if (a.position.imag() != b.position.imag()) return a.position.imag() < b.position.imag();
    return a.position.real() < b.position.real();
  });
  if (zs.total_multiplicity() != p.d)
    throw ZeroFindingError("find_zeros: located multiplicity " + std::to_string(zs.total_multiplicity()) +
                           " differs from d; " + describe(zs.zeros));
  const SumResidual r = zero_sum_residual(zs.zeros, p);
  zs.m = r.m;
  zs.n = r.n;
  zs.residual = r.residual;
  return zs;
}

}  // namespace

// A split line that passes within rounding distance of a multiple zero cuts
// its cluster in pieces no box can resolve; a fresh placement avoids it.
ZeroSet find_zeros(const AnalyticState& s) {
  constexpr int kRestarts = 4;
  for (int attempt = 0;; ++attempt) {
    try {
      return search_zeros(s, 0x2e805 + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(attempt));
    } catch (const ZeroFindingError&) {
      if (attempt + 1 == kRestarts) throw;
    }
  }
}

SumResidual zero_sum_residual(std::span<const Zero> zeros, const SystemParams& p) {
  p.validate();
  cx sum = 0.0;
  for (const Zero& z : zeros) sum += static_cast<double>(z.multiplicity) * z.position;
  const cx excess = sum - zero_sum_offset(p);
  const double step = std::sqrt(2.0 * kPi * p.d);
  // The lattice is rectangular, so the nearest point is found per axis.
  const long m = std::lround(excess.real() / (step * p.lambda));
  const long n = std::lround(excess.imag() * p.lambda / step);
  const cx lattice = step * cx(static_cast<double>(m) * p.lambda, static_cast<double>(n) / p.lambda);
  return SumResidual{std::abs(excess - lattice), m, n};
}

SumResidual zero_sum_residual(const ZeroSet& zs) { return zero_sum_residual(zs.zeros, zs.params); }

const char* to_string(Completeness c) {
  switch (c) {
    case Completeness::undercomplete:
      return "undercomplete";
    case Completeness::complete:
      return "complete";
    case Completeness::overcomplete_at_least_complete:
      return "overcomplete-at-least-complete";
  }
  return "unknown";
}

CompletenessResult classify_completeness(std::span<const cx> points, const SystemParams& p) {
  p.validate();
  const Rect cell = fundamental_cell(p);
  CompletenessResult out{Completeness::undercomplete, {}, false, std::nullopt};
  for (const cx& raw : points) {
    if (!std::isfinite(raw.real()) || !std::isfinite(raw.imag()))
      throw std::invalid_argument("classify_completeness: non-finite point");
    cx z = raw;
    const bool inside = z.real() >= cell.lo.real() && z.real() < cell.hi.real() && z.imag() >= cell.lo.imag() &&
                        z.imag() < cell.hi.imag();
    if (!inside) {
      z = reduce_into_cell(z, p);
      out.reduced_into_cell = true;
    }
    auto dup = std::find_if(out.points.begin(), out.points.end(),
                            [&](const Zero& q) { return std::abs(q.position - z) <= kMergeDistance; });
    if (dup != out.points.end())
      ++dup->multiplicity;
    else
      out.points.push_back({z, 1});
  }
  int count = 0;
  for (const Zero& q : out.points) count += q.multiplicity;
  if (count > p.d) {
    out.kind = Completeness::overcomplete_at_least_complete;
  } else if (count < p.d) {
    out.kind = Completeness::undercomplete;
  } else {
    out.sum = zero_sum_residual(out.points, p);
    out.kind = out.sum->residual <= kSumConstraintTol ? Completeness::undercomplete : Completeness::complete;
  }
  return out;
}

cx zero_product(std::span<const Zero> zeros, const SystemParams& p, cx z) {
  const double s = std::sqrt(kPi / (2.0 * p.d)) / p.lambda;
  const cx offset = std::sqrt(kPi * p.d / 2.0) * cx(p.lambda, 1.0 / p.lambda);
  const cx tau(0.0, 1.0 / (p.lambda * p.lambda));
  cx q = 1.0;
  for (const Zero& zj : zeros) {
    const cx t = theta::theta3((z - zj.position + offset) * s, tau);
    for (int k = 0; k < zj.multiplicity; ++k) q *= t;
  }
  return q;
}

cx reconstructed_f_unnormalized(std::span<const Zero> zeros, const SystemParams& p, long n, cx z) {
  const double k = std::sqrt(2.0 * kPi / p.d) * static_cast<double>(n) / p.lambda;
  return std::exp(cx(0.0, -k) * z) * zero_product(zeros, p, z);
}

FiniteState reconstruct_from_zeros(const ReconstructionInput& in) {
  const SystemParams& p = in.params;
  p.validate();
  int total = 0;
  for (const Zero& z : in.zeros) {
    if (z.multiplicity < 1) throw std::invalid_argument("zero multiplicity must be positive");
    total += z.multiplicity;
  }
  if (total != p.d)
    throw std::invalid_argument("reconstruction needs d = " + std::to_string(p.d) +
                                " zeros counted with multiplicity, got " + std::to_string(total));

  SumResidual sum = zero_sum_residual(in.zeros, p);
  if (in.m || in.n) {
    const long m = in.m.value_or(sum.m);
    const long n = in.n.value_or(sum.n);
    cx acc = 0.0;
    for (const Zero& z : in.zeros) acc += static_cast<double>(z.multiplicity) * z.position;
    const double step = std::sqrt(2.0 * kPi * p.d);
    const cx lattice = step * cx(static_cast<double>(m) * p.lambda, static_cast<double>(n) / p.lambda);
    sum = SumResidual{std::abs(acc - zero_sum_offset(p) - lattice), m, n};
  }
  if (sum.residual > kSumConstraintTol) {
    std::ostringstream os;
    os << "no such state exists: zeros violate the sum constraint (residual " << sum.residual << ")";
    throw ConstraintViolation(os.str());
  }

  const int d = p.d;
  const double step_re = p.real_period() / d;
  const double heights[] = {0.173, 0.411, 0.059, 0.287};
  for (double h : heights) {
    Eigen::MatrixXcd basis(d, d);
    Eigen::VectorXcd values(d);
    for (int j = 0; j < d; ++j) {
      const cx zj(p.cell_a + (j + 0.5) * step_re, p.cell_b + h * p.imag_period() / d);
      values(j) = reconstructed_f_unnormalized(in.zeros, p, sum.n, zj);
      for (int m = 0; m < d; ++m) basis(j, m) = std::pow(kPi, -0.25) * basis_theta(m, zj, p);
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(basis, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (!(sv(d - 1) > 0.0) || sv(0) / sv(d - 1) > kMaxCondition) continue;
    const Eigen::VectorXcd amps = svd.solve(values);
    if (!amps.allFinite() || amps.norm() == 0.0) continue;
    Eigen::Index top = 0;
    amps.cwiseAbs().maxCoeff(&top);
    const cx phase = std::conj(amps(top)) / std::abs(amps(top));
    return FiniteState::from_vector(amps * phase, true);
  }
  throw std::runtime_error("reconstruct_from_zeros: collocation system ill-conditioned at every offset");
}

}  // namespace fqa

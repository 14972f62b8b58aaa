#include "fqa/zak.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fqa/theta.hpp"

namespace fqa {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kShellRelTol = 1e-15;
constexpr double kGridEdgeRelTol = 1e-6;

// sum_w weight(w) * sample(step * (offset + d w)), expanding |w| shell by shell
// until three consecutive shells beyond the support radius contribute less
// than kShellRelTol relative to the partial sum, or less than the absolute
// noise floor of the samples (nonzero for gridded data).
template <class Sample>
cx lattice_sum(Sample&& sample, double step, double offset, int d, double sigma1, double radius,
               double noise = 0.0) {
  auto point = [&](long w) { return step * (offset + static_cast<double>(d) * w); };
  auto weighted = [&](long w) {
    const cx v = sample(point(w));
    return sigma1 == 0.0 ? v : v * std::polar(1.0, -2.0 * kPi * sigma1 * static_cast<double>(w));
  };
  cx sum = weighted(0);
  double peak = std::abs(sum);
  int quiet = 0;
  for (long k = 1; k <= kMaxZakShell; ++k) {
    const cx hi = weighted(k);
    const cx lo = weighted(-k);
    sum += hi + lo;
    peak = std::max({peak, std::abs(hi), std::abs(lo)});
    const bool beyond = std::min(std::abs(point(k)), std::abs(point(-k))) > radius;
    if (beyond && std::abs(hi + lo) <= std::max(kShellRelTol * std::max(std::abs(sum), peak), noise)) {
      if (++quiet == 3) return sum;
    } else {
      quiet = 0;
    }
  }
  throw ZakError("lattice sum did not converge within |w| <= " + std::to_string(kMaxZakShell));
}

void check_grid_coverage(const Wavefunction& psi) {
  const auto* grid = std::get_if<SampledGrid>(&psi);
  if (grid == nullptr) return;
  double peak = 0.0;
  for (const cx& v : grid->values()) peak = std::max(peak, std::abs(v));
  const double edge = std::max(std::abs(grid->values().front()), std::abs(grid->values().back()));
  if (edge > kGridEdgeRelTol * peak)
    throw ZakError("sampled grid does not cover the support of the wavefunction (edge values not negligible)");
}

// Rounding floor of the trapezoid transform of gridded data: a few ulps of
// h sum |psi_j|. Zero for the closed-form families.
double fourier_noise(const Wavefunction& psi) {
  const auto* grid = std::get_if<SampledGrid>(&psi);
  if (grid == nullptr) return 0.0;
  double mass = 0.0;
  for (const cx& v : grid->values()) mass += std::abs(v);
  return 16.0 * std::numeric_limits<double>::epsilon() * grid->spacing() * mass;
}

ZakImage normalize_image(std::vector<cx> raw) {
  double n = 0.0;
  for (const cx& v : raw) n += std::norm(v);
  if (!(n > 0.0)) throw ZakError("transform produced the zero vector");
  return ZakImage{FiniteState::normalized(std::move(raw)), n};
}

void require_unit_lambda(const SystemParams& params, const char* what) {
  if (params.lambda != 1.0)
    throw std::invalid_argument(std::string(what) + " is defined at lambda = 1 only");
}

}  // namespace

ZakSector ZakSector::reduced(double s1, double s2) {
  auto wrap = [](double s) {
    if (!std::isfinite(s)) throw std::invalid_argument("sector parameters must be finite");
    double r = s - std::floor(s);
    return r >= 1.0 ? 0.0 : r;
  };
  return ZakSector{wrap(s1), wrap(s2)};
}

double zak_sample_point(const SystemParams& params, double sigma2, long m, long w) {
  return params.position_step() * (static_cast<double>(m) + sigma2 + static_cast<double>(params.d) * w);
}

cx zak_component_raw(const Wavefunction& psi, const SystemParams& params, ZakSector sector, long m) {
  params.validate();
  return lattice_sum([&](double x) { return evaluate(psi, x); }, params.position_step(),
                     static_cast<double>(m) + sector.sigma2, params.d, sector.sigma1, support_radius(psi));
}

ZakImage zak_transform(const Wavefunction& psi, const SystemParams& params, ZakSector sector) {
  params.validate();
  check_grid_coverage(psi);
  std::vector<cx> raw(static_cast<std::size_t>(params.d));
  for (int m = 0; m < params.d; ++m) raw[m] = zak_component_raw(psi, params, sector, m);
  return normalize_image(std::move(raw));
}

FiniteState zak_map(const Wavefunction& psi, const SystemParams& params, ZakSector sector) {
  return zak_transform(psi, params, sector).state;
}

ZakImage momentum_zak_transform(const Wavefunction& psi, const SystemParams& params) {
  params.validate();
  check_grid_coverage(psi);
  std::vector<cx> raw(static_cast<std::size_t>(params.d));
  const double radius = fourier_support_radius(psi);
  const double noise = fourier_noise(psi);
  for (int m = 0; m < params.d; ++m)
    raw[m] = lattice_sum([&](double p) { return evaluate_fourier(psi, p); }, params.momentum_step(),
                         static_cast<double>(m), params.d, 0.0, radius, noise);
  return normalize_image(std::move(raw));
}

FiniteState momentum_zak_map(const Wavefunction& psi, const SystemParams& params) {
  return momentum_zak_transform(psi, params).state;
}

FiniteState number_state(int n, const SystemParams& params) {
  require_unit_lambda(params, "number_state");
  if (n < 0) throw std::invalid_argument("number state index must be non-negative");
  // For some (N, d) the eigenspace of F with eigenvalue i^N is too small to
  // hold the image and the lattice sums cancel exactly; what is left is
  // rounding noise, orders below the per-sample scale 1/step.
  ZakImage im = zak_transform(HermiteNumber{n}, params);
  if (im.normalization * params.position_step() < 1e-20)
    throw ZakError("number state " + std::to_string(n) + " has a vanishing image for d = " +
                   std::to_string(params.d));
  return std::move(im.state);
}

std::vector<cx> coherent_amplitudes_raw(cx a, const SystemParams& params) {
  params.validate();
  const int d = params.d;
  const double lam = params.lambda;
  const cx prefactor = std::pow(kPi, -0.25) / (std::sqrt(static_cast<double>(d)) * lam) *
                       std::exp(cx(0.0, 0.5 * a.imag()) * a);
  const cx shift = a / lam * std::sqrt(kPi / (2.0 * d));
  std::vector<cx> out(static_cast<std::size_t>(d));
  for (int m = 0; m < d; ++m)
    out[m] = prefactor * theta::theta3(kPi * m / d - shift, params.basis_tau());
  return out;
}

double coherent_normalization(cx a, const SystemParams& params) {
  params.validate();
  const int d = params.d;
  const double lam = params.lambda;
  const double lam2 = lam * lam;
  const cx im_arg(0.0, a.imag() / lam * std::sqrt(2.0 * kPi / d));
  const cx tau_small(0.0, 2.0 / (d * lam2));
  cx braces;
  if (d % 2 == 1) {
    const cx re_arg = a.real() / lam * std::sqrt(2.0 * kPi * d);
    const cx tau_big(0.0, 2.0 * d / lam2);
    braces = theta::theta3(re_arg, tau_big) * theta::theta3(im_arg, tau_small) +
             theta::theta2(re_arg, tau_big) * theta::theta2(im_arg, tau_small);
  } else {
    const cx re_arg = a.real() / lam * std::sqrt(kPi * d / 2.0);
    braces = theta::theta3(re_arg, cx(0.0, d / (2.0 * lam2))) * theta::theta3(im_arg, tau_small);
  }
  return std::pow(kPi, -0.5) / lam2 * std::exp(-a.imag() * a.imag()) * braces.real();
}

FiniteState coherent_state_closed(cx a, const SystemParams& params) {
  if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
    throw std::invalid_argument("coherent state label must be finite");
  return FiniteState::normalized(coherent_amplitudes_raw(a, params));
}

namespace {

struct OverlapParts {
  cx prefactor;
  cx sum_conj;   // (A1* + A2) / lambda
  cx diff_conj;  // (A1* - A2) / lambda
};

OverlapParts overlap_parts(cx a1, cx a2, const SystemParams& params) {
  params.validate();
  const double lam = params.lambda;
  const double n1 = coherent_normalization(a1, params);
  const double n2 = coherent_normalization(a2, params);
  const cx phase = std::exp(cx(0.0, -0.5 * a1.imag()) * std::conj(a1) + cx(0.0, 0.5 * a2.imag()) * a2);
  return {std::pow(kPi, -0.5) / (lam * lam) / std::sqrt(n1 * n2) * phase, (std::conj(a1) + a2) / lam,
          (std::conj(a1) - a2) / lam};
}

}  // namespace

cx coherent_overlap_general(cx a1, cx a2, const SystemParams& params) {
  const OverlapParts p = overlap_parts(a1, a2, params);
  const int d = params.d;
  const double lam2 = params.lambda * params.lambda;
  const cx u1 = p.sum_conj * std::sqrt(kPi * d / 2.0);
  const cx u2 = p.diff_conj * std::sqrt(kPi / (2.0 * d));
  const cx t1(0.0, 2.0 * d / lam2);
  const cx t2(0.0, 2.0 / (d * lam2));
  return p.prefactor *
         (theta::theta3(u1, t1) * theta::theta3(u2, t2) + theta::theta2(u1, t1) * theta::theta2(u2, t2));
}

cx coherent_overlap_even(cx a1, cx a2, const SystemParams& params) {
  const OverlapParts p = overlap_parts(a1, a2, params);
  const int d = params.d;
  const double lam2 = params.lambda * params.lambda;
  return p.prefactor * theta::theta3(p.sum_conj * std::sqrt(kPi * d / 8.0), cx(0.0, d / (2.0 * lam2))) *
         theta::theta3(p.diff_conj * std::sqrt(kPi / (2.0 * d)), cx(0.0, 2.0 / (d * lam2)));
}

cx coherent_overlap(cx a1, cx a2, const SystemParams& params) {
  return params.d % 2 == 0 ? coherent_overlap_even(a1, a2, params) : coherent_overlap_general(a1, a2, params);
}

FiniteState coherent_from_number(cx a, const SystemParams& params, int n_max) {
  require_unit_lambda(params, "coherent_from_number");
  if (n_max < 0) throw std::invalid_argument("n_max must be non-negative");
  const int d = params.d;
  const double inv_nc = 1.0 / std::sqrt(coherent_normalization(a, params));
  std::vector<cx> acc(static_cast<std::size_t>(d), 0.0);
  cx coeff = std::exp(-0.25 * std::norm(a));
  const cx step = a / std::sqrt(2.0);
  for (int n = 0; n <= n_max; ++n) {
    if (n > 0) coeff *= step / std::sqrt(static_cast<double>(n));
    if (coeff == 0.0) break;
    for (int m = 0; m < d; ++m)
      acc[m] += coeff * inv_nc * zak_component_raw(HermiteNumber{n}, params, {}, m);
  }
  return FiniteState::raw(std::move(acc));
}

ZakFamily build_zak_family(const Wavefunction& psi, const SystemParams& params, double sigma2, int grid_points) {
  if (grid_points < 4 || grid_points % 2 != 0)
    throw std::invalid_argument("sigma1 grid needs an even number of points >= 4");
  ZakFamily fam{params, ZakSector::reduced(0.0, sigma2).sigma2, {}};
  fam.members.reserve(static_cast<std::size_t>(grid_points));
  for (int k = 0; k < grid_points; ++k)
    fam.members.push_back(zak_transform(psi, params, {static_cast<double>(k) / grid_points, fam.sigma2}));
  return fam;
}

cx inverse_zak(const ZakFamily& family, long m, long w, double tol) {
  const int d = family.params.d;
  const int k_total = static_cast<int>(family.members.size());
  if (k_total < 4 || k_total % 2 != 0) throw std::invalid_argument("sigma1 grid needs an even number of points >= 4");
  const long m0 = mod_d(m, d);
  const long w0 = w + (m - m0) / d;
  cx full = 0.0;
  cx half = 0.0;
  for (int k = 0; k < k_total; ++k) {
    const ZakImage& img = family.members[k];
    if (img.state.dim() != d) throw std::invalid_argument("family member dimension mismatch");
    const double s1 = static_cast<double>(k) / k_total;
    const cx term = std::sqrt(img.normalization) * img.state[m0] * std::polar(1.0, 2.0 * kPi * s1 * w0);
    full += term;
    if (k % 2 == 0) half += term;
  }
  full /= static_cast<double>(k_total);
  half /= static_cast<double>(k_total / 2);
  if (std::abs(full - half) > tol)
    throw ZakError("sigma1 grid too coarse: quadrature error estimate " + std::to_string(std::abs(full - half)));
  return full;
}

}  // namespace fqa

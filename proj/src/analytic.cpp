#include "fqa/analytic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "fqa/quadrature.hpp"
#include "fqa/theta.hpp"
#include "fqa/zak.hpp"

namespace fqa {
namespace {

constexpr double kPi = std::numbers::pi;

double quarter_root_pi_inv() { return std::pow(kPi, -0.25); }

// (pi / 2d)^{1/2} / lambda: the factor multiplying z in the basis argument.
double basis_scale(const SystemParams& p) { return std::sqrt(kPi / (2.0 * p.d)) / p.lambda; }

void require_same_params(const SystemParams& a, const SystemParams& b) {
  if (a.d != b.d || a.lambda != b.lambda)
    throw std::invalid_argument("analytic states must share d and lambda");
}

}  // namespace

AnalyticState::AnalyticState(FiniteState state, SystemParams params)
    : state_(std::move(state)), params_(params) {
  params_.validate();
  if (state_.dim() != params_.d) throw std::invalid_argument("state dimension does not match params.d");
}

cx basis_theta(long m, cx z, const SystemParams& params) {
  return theta::theta3(kPi * static_cast<double>(m) / params.d - z * basis_scale(params), params.basis_tau());
}

cx basis_theta_derivative(long m, cx z, const SystemParams& params) {
  const double s = basis_scale(params);
  return -s * theta::theta3_derivative(kPi * static_cast<double>(m) / params.d - z * s, params.basis_tau());
}

cx eval_f(const AnalyticState& s, cx z) {
  cx acc = 0.0;
  for (int m = 0; m < s.dim(); ++m)
    if (s.state()[m] != 0.0) acc += basis_theta(m, z, s.params()) * s.state()[m];
  return quarter_root_pi_inv() * acc;
}

cx eval_f_derivative(const AnalyticState& s, cx z) {
  cx acc = 0.0;
  for (int m = 0; m < s.dim(); ++m)
    if (s.state()[m] != 0.0) acc += basis_theta_derivative(m, z, s.params()) * s.state()[m];
  return quarter_root_pi_inv() * acc;
}

cx eval_f_from_overlap(const AnalyticState& s, cx z) {
  const SystemParams& p = s.params();
  const ZakImage coh = zak_transform(GaussianCoherent{std::conj(z)}, p);
  const cx overlap = coh.state.inner(s.state());
  return std::sqrt(coh.normalization * p.d) * p.lambda * std::exp(cx(0.0, -0.5 * z.imag()) * z) * overlap;
}

cx eval_momentum_form(long m, const SystemParams& params, cx z) {
  params.validate();
  const double lam = params.lambda;
  const cx arg = kPi * static_cast<double>(m) / params.d - lam * z * cx(0.0, 1.0) * std::sqrt(kPi / (2.0 * params.d));
  return lam * quarter_root_pi_inv() * std::exp(-0.5 * z * z) *
         theta::theta3(arg, cx(0.0, lam * lam / params.d));
}

namespace {

cx coherent_form_prefactor(cx a, const SystemParams& p) {
  return std::pow(kPi, -0.5) / p.lambda * std::sqrt(static_cast<double>(p.d)) /
         std::sqrt(coherent_normalization(a, p)) * std::exp(cx(0.0, 0.5 * a.imag()) * a);
}

}  // namespace

cx eval_coherent_form_general(cx a, const SystemParams& p, cx z) {
  p.validate();
  const double lam2 = p.lambda * p.lambda;
  const cx u1 = (z + a) / p.lambda * std::sqrt(kPi * p.d / 2.0);
  const cx u2 = (z - a) / p.lambda * std::sqrt(kPi / (2.0 * p.d));
  const cx t1(0.0, 2.0 * p.d / lam2);
  const cx t2(0.0, 2.0 / (p.d * lam2));
  return coherent_form_prefactor(a, p) *
         (theta::theta3(u1, t1) * theta::theta3(u2, t2) + theta::theta2(u1, t1) * theta::theta2(u2, t2));
}

cx eval_coherent_form_even(cx a, const SystemParams& p, cx z) {
  p.validate();
  const double lam2 = p.lambda * p.lambda;
  const cx u1 = (z + a) / p.lambda * std::sqrt(kPi * p.d / 8.0);
  const cx u2 = (z - a) / p.lambda * std::sqrt(kPi / (2.0 * p.d));
  return coherent_form_prefactor(a, p) * theta::theta3(u1, cx(0.0, p.d / (2.0 * lam2))) *
         theta::theta3(u2, cx(0.0, 2.0 / (p.d * lam2)));
}

cx eval_coherent_form(cx a, const SystemParams& p, cx z) {
  return p.d % 2 == 0 ? eval_coherent_form_even(a, p, z) : eval_coherent_form_general(a, p, z);
}

cx scalar_product(const AnalyticState& f, const AnalyticState& g) {
  require_same_params(f.params(), g.params());
  const SystemParams& p = f.params();
  const cx integral = quadrature::integrate_cell<cx>(
      p, [&](cx z) { return std::exp(-z.imag() * z.imag()) * eval_f(f, z) * eval_f(g, std::conj(z)); });
  return integral / (std::sqrt(2.0 * kPi) * std::pow(static_cast<double>(p.d), 1.5) * p.lambda);
}

cx displaced_f(const AnalyticState& s, PhasePoint pt, cx z) {
  const SystemParams& p = s.params();
  const int d = p.d;
  const PhasePoint c = PhasePoint::canonical(pt.alpha, pt.beta, d);
  const double alpha = static_cast<double>(c.alpha);
  const double lam2 = p.lambda * p.lambda;
  const double z_step = std::sqrt(2.0 * kPi / d) / p.lambda;
  const cx arg_shift = cx(0.0, -alpha * kPi / (d * lam2)) + static_cast<double>(c.beta) * kPi / d;
  cx acc = 0.0;
  for (int m = 0; m < d; ++m) {
    if (s.state()[m] == 0.0) continue;
    const cx u = kPi * m / d - z * basis_scale(p) + arg_shift;
    acc += s.state()[m] * theta::theta3(u, p.basis_tau());
  }
  const cx envelope = std::exp(cx(0.0, alpha * z_step) * z - alpha * alpha * kPi / (d * lam2));
  return omega_half(-c.alpha * c.beta, d) * quarter_root_pi_inv() * envelope * acc;
}

cx kernel_eval(const OperatorKernel& k, cx z, cx zeta_star) {
  const SystemParams& p = k.params;
  p.validate();
  if (k.op.dim() != p.d) throw std::invalid_argument("kernel operator dimension does not match params.d");
  cx acc = 0.0;
  for (int m = 0; m < p.d; ++m) {
    cx row = 0.0;
    for (int n = 0; n < p.d; ++n) row += k.op(m, n) * basis_theta(n, zeta_star, p);
    acc += basis_theta(m, z, p) * row;
  }
  return acc / (std::sqrt(kPi) * p.d);
}

cx kernel_apply(const OperatorKernel& k, const AnalyticState& f, cx z) {
  const SystemParams& p = k.params;
  require_same_params(p, f.params());
  if (k.op.dim() != p.d) throw std::invalid_argument("kernel operator dimension does not match params.d");
  // Column weights c_n = sum_m Omega_mn Theta_m(z) are independent of zeta.
  std::vector<cx> col(static_cast<std::size_t>(p.d), 0.0);
  for (int m = 0; m < p.d; ++m) {
    const cx t = basis_theta(m, z, p);
    for (int n = 0; n < p.d; ++n) col[n] += k.op(m, n) * t;
  }
  const SystemParams cell = f.params();
  const cx integral = quadrature::integrate_cell<cx>(cell, [&](cx zeta) {
    const cx zs = std::conj(zeta);
    cx kern = 0.0;
    for (int n = 0; n < p.d; ++n) kern += col[n] * basis_theta(n, zs, p);
    return std::exp(-zeta.imag() * zeta.imag()) * kern * eval_f(f, zeta);
  });
  return integral / (std::sqrt(kPi) * p.d) / (std::sqrt(2.0 * kPi * p.d) * p.lambda);
}

cx apply_weyl_expansion_analytic(const WeylTable& table, const AnalyticState& f, cx z) {
  const int d = f.dim();
  if (table.rows() != d || table.cols() != d) throw std::invalid_argument("Weyl table dimension mismatch");
  cx acc = 0.0;
  for (long a = 0; a < d; ++a)
    for (long b = 0; b < d; ++b) acc += weyl_entry(table, -a, -b) * displaced_f(f, {a, b}, z);
  return acc / static_cast<double>(d);
}

FiniteOperator coherent_resolution_quadrature(const SystemParams& params) {
  params.validate();
  const int d = params.d;
  const Eigen::MatrixXcd integral = quadrature::integrate_cell<Eigen::MatrixXcd>(params, [&](cx a) {
    const std::vector<cx> raw = coherent_amplitudes_raw(a, params);
    const Eigen::Map<const Eigen::VectorXcd> v(raw.data(), d);
    return Eigen::MatrixXcd(v * v.adjoint());
  });
  return FiniteOperator(integral * (params.lambda / std::sqrt(2.0 * kPi * d)));
}

}  // namespace fqa

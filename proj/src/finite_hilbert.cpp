#include "fqa/finite_hilbert.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fqa {
namespace {

constexpr double kPi = std::numbers::pi;

void require_dim(int d) {
  if (d < 1) throw std::invalid_argument("dimension must be >= 1, got " + std::to_string(d));
}

}  // namespace

cx omega(long k, int d) {
  require_dim(d);
  return std::polar(1.0, 2.0 * kPi * static_cast<double>(mod_d(k, d)) / d);
}

cx omega_half(long k, int d) {
  require_dim(d);
  return std::polar(1.0, kPi * static_cast<double>(mod_d(k, 2L * d)) / d);
}

// ---------------------------------------------------------------------------
// FiniteState

FiniteState FiniteState::normalized(std::vector<cx> amplitudes) {
  if (amplitudes.empty()) throw std::invalid_argument("state needs at least one amplitude");
  double n2 = 0.0;
  for (const cx& a : amplitudes) n2 += std::norm(a);
  if (!(n2 > 0.0) || !std::isfinite(n2))
    throw std::invalid_argument("cannot normalize a zero or non-finite state");
  const double inv = 1.0 / std::sqrt(n2);
  for (cx& a : amplitudes) a *= inv;
  return FiniteState(std::move(amplitudes));
}

FiniteState FiniteState::raw(std::vector<cx> amplitudes) {
  if (amplitudes.empty()) throw std::invalid_argument("state needs at least one amplitude");
  return FiniteState(std::move(amplitudes));
}

double FiniteState::norm() const {
  double n2 = 0.0;
  for (const cx& a : amps_) n2 += std::norm(a);
  return std::sqrt(n2);
}

bool FiniteState::is_normalized(double tol) const { return std::abs(norm() - 1.0) <= tol; }

cx FiniteState::inner(const FiniteState& other) const {
  if (other.dim() != dim()) throw std::invalid_argument("inner product of states with different d");
  cx acc = 0.0;
  for (int m = 0; m < dim(); ++m) acc += std::conj(amps_[m]) * other.amps_[m];
  return acc;
}

cx FiniteState::bilinear(const FiniteState& other) const {
  if (other.dim() != dim()) throw std::invalid_argument("pairing of states with different d");
  cx acc = 0.0;
  for (int m = 0; m < dim(); ++m) acc += amps_[m] * other.amps_[m];
  return acc;
}

Eigen::VectorXcd FiniteState::vector() const {
  return Eigen::Map<const Eigen::VectorXcd>(amps_.data(), dim());
}

FiniteState FiniteState::from_vector(const Eigen::VectorXcd& v, bool normalize) {
  std::vector<cx> a(v.data(), v.data() + v.size());
  return normalize ? normalized(std::move(a)) : raw(std::move(a));
}

double fidelity(const FiniteState& a, const FiniteState& b) { return std::abs(a.inner(b)); }

// ---------------------------------------------------------------------------
// FiniteOperator

FiniteOperator::FiniteOperator(Eigen::MatrixXcd m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() < 1)
    throw std::invalid_argument("operator matrix must be square and non-empty");
}

FiniteOperator FiniteOperator::identity(int d) {
  require_dim(d);
  return FiniteOperator(Eigen::MatrixXcd::Identity(d, d));
}

FiniteOperator FiniteOperator::zero(int d) {
  require_dim(d);
  return FiniteOperator(Eigen::MatrixXcd::Zero(d, d));
}

FiniteState FiniteOperator::apply(const FiniteState& s) const {
  if (s.dim() != dim()) throw std::invalid_argument("operator/state dimension mismatch");
  return FiniteState::from_vector(m_ * s.vector(), false);
}

double FiniteOperator::max_abs_diff(const FiniteOperator& other) const {
  if (other.dim() != dim()) throw std::invalid_argument("operator dimension mismatch");
  return (m_ - other.m_).cwiseAbs().maxCoeff();
}

bool FiniteOperator::is_unitary(double tol) const {
  const Eigen::MatrixXcd p = m_ * m_.adjoint();
  return (p - Eigen::MatrixXcd::Identity(dim(), dim())).cwiseAbs().maxCoeff() <= tol;
}

FiniteOperator operator*(const FiniteOperator& a, const FiniteOperator& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("operator dimension mismatch");
  return FiniteOperator(a.m_ * b.m_);
}

FiniteOperator operator+(const FiniteOperator& a, const FiniteOperator& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("operator dimension mismatch");
  return FiniteOperator(a.m_ + b.m_);
}

// ---------------------------------------------------------------------------
// Bases and the Heisenberg-Weyl group

FiniteOperator fourier_matrix(int d) {
  require_dim(d);
  Eigen::MatrixXcd f(d, d);
  const double s = 1.0 / std::sqrt(static_cast<double>(d));
  for (int m = 0; m < d; ++m)
    for (int n = 0; n < d; ++n) f(m, n) = s * omega(static_cast<long>(m) * n, d);
  return FiniteOperator(std::move(f));
}

FiniteState position_state(long m, int d) {
  require_dim(d);
  std::vector<cx> a(static_cast<std::size_t>(d), 0.0);
  a[static_cast<std::size_t>(mod_d(m, d))] = 1.0;
  return FiniteState::raw(std::move(a));
}

FiniteState momentum_state(long m, int d) {
  require_dim(d);
  std::vector<cx> a(static_cast<std::size_t>(d));
  const double s = 1.0 / std::sqrt(static_cast<double>(d));
  for (int n = 0; n < d; ++n) a[n] = s * omega(m * n, d);
  return FiniteState::raw(std::move(a));
}

FiniteOperator position_operator(int d) {
  require_dim(d);
  Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(d, d);
  for (int n = 0; n < d; ++n) x(n, n) = static_cast<double>(n);
  return FiniteOperator(std::move(x));
}

FiniteOperator momentum_operator(int d) {
  const FiniteOperator f = fourier_matrix(d);
  return f * position_operator(d) * f.adjoint();
}

FiniteOperator displacement(PhasePoint p, int d) {
  require_dim(d);
  const PhasePoint c = PhasePoint::canonical(p.alpha, p.beta, d);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  for (long k = 0; k < d; ++k)
    m(mod_d(k + c.beta, d), k) = omega_half(c.alpha * c.beta + 2 * c.alpha * k, d);
  return FiniteOperator(std::move(m));
}

int displacement_label_sign(long alpha, long beta, int d) {
  require_dim(d);
  const long a0 = mod_d(alpha, d);
  const long b0 = mod_d(beta, d);
  const long s = (alpha - a0) / d;
  const long t = (beta - b0) / d;
  const long parity = a0 * t + s * b0 + static_cast<long>(d) * s * t;
  return mod_d(parity, 2) == 0 ? 1 : -1;
}

FiniteState displaced_state(const FiniteState& s, PhasePoint p) {
  const int d = s.dim();
  const PhasePoint c = PhasePoint::canonical(p.alpha, p.beta, d);
  std::vector<cx> out(static_cast<std::size_t>(d));
  for (long m = 0; m < d; ++m)
    out[mod_d(m + c.beta, d)] = s[m] * omega_half(c.alpha * c.beta + 2 * c.alpha * m, d);
  return FiniteState::raw(std::move(out));
}

WeylTable weyl_function(const FiniteOperator& op) {
  const int d = op.dim();
  WeylTable w(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) w(a, b) = (op * displacement({a, b}, d)).trace();
  return w;
}

cx weyl_entry(const WeylTable& table, long alpha, long beta) {
  const int d = static_cast<int>(table.rows());
  return static_cast<double>(displacement_label_sign(alpha, beta, d)) *
         table(mod_d(alpha, d), mod_d(beta, d));
}

FiniteOperator operator_from_weyl(const WeylTable& table, int d) {
  require_dim(d);
  if (table.rows() != d || table.cols() != d)
    throw std::invalid_argument("Weyl table must be " + std::to_string(d) + "x" + std::to_string(d));
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(d, d);
  for (long a = 0; a < d; ++a)
    for (long b = 0; b < d; ++b)
      acc += weyl_entry(table, -a, -b) * displacement({a, b}, d).matrix();
  return FiniteOperator(acc / static_cast<double>(d));
}

FiniteState random_state(int d, std::mt19937_64& rng) {
  require_dim(d);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<cx> a(static_cast<std::size_t>(d));
  for (cx& v : a) v = cx(g(rng), g(rng));
  return FiniteState::normalized(std::move(a));
}

}  // namespace fqa

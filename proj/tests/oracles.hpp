// Independent reference computations for the tests: plain series, finite
// differences, explicit traces. None of them shares code with the library
// beyond the value types.
#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "fqa/finite_hilbert.hpp"
#include "fqa/params.hpp"

namespace oracle {

using cx = std::complex<double>;
inline constexpr double kPi = std::numbers::pi;

/// Symmetric partial sum |n| <= nmax, no adaptivity.
inline cx theta3(cx u, cx tau, int nmax = 30) {
  cx s = 0.0;
  for (int n = -nmax; n <= nmax; ++n) s += std::exp(cx(0.0, 1.0) * (kPi * tau * double(n * n) + 2.0 * double(n) * u));
  return s;
}

inline cx theta2(cx u, cx tau, int nmax = 30) {
  cx s = 0.0;
  for (int n = -nmax - 1; n <= nmax; ++n) {
    const double h = n + 0.5;
    s += std::exp(cx(0.0, 1.0) * (kPi * tau * h * h + 2.0 * h * u));
  }
  return s;
}

template <class F>
cx central_difference(F&& f, cx z, double h = 1e-6) {
  return (f(z + h) - f(z - h)) / (2.0 * h);
}

/// Tr[A B] by explicit index loops.
inline cx trace_product(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  cx t = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index k = 0; k < a.cols(); ++k) t += a(i, k) * b(k, i);
  return t;
}

/// Coherent amplitudes from the Gaussian lattice sum, normalized; no theta functions.
inline Eigen::VectorXcd coherent_by_lattice(cx a, const fqa::SystemParams& p) {
  Eigen::VectorXcd v(p.d);
  const double step = std::sqrt(2.0 * kPi / p.d) * p.lambda;
  for (int m = 0; m < p.d; ++m) {
    cx s = 0.0;
    for (int w = -40; w <= 40; ++w) {
      const double x = step * (m + p.d * w);
      s += std::exp(-0.5 * x * x + a * x - 0.5 * a.real() * a);
    }
    v(m) = s;
  }
  return v / v.norm();
}

/// Smallest over largest singular value of the matrix whose rows are the
/// coherent states at the given points. Near zero exactly when the states
/// fail to span the space.
inline double coherent_gram_ratio(const std::vector<cx>& points, const fqa::SystemParams& p) {
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(points.size()), p.d);
  for (std::size_t i = 0; i < points.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = coherent_by_lattice(points[i], p);
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(m).singularValues();
  return sv(sv.size() - 1) / sv(0);
}

inline cx random_in_cell(const fqa::SystemParams& p, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return {p.cell_a + u(rng) * p.real_period(), p.cell_b + u(rng) * p.imag_period()};
}

}  // namespace oracle

// Tensor-product Gauss-Legendre quadrature over the fundamental cell with
// 32 -> 64 -> 128 point refinement per axis.
#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fqa/params.hpp"

namespace fqa::quadrature {

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Nodes and weights on [-1, 1].
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

Rule gauss_legendre(int n);

inline constexpr int kRefinementLevels[] = {32, 64, 128};
inline constexpr double kCellTol = 1e-6;

inline double distance(std::complex<double> a, std::complex<double> b) { return std::abs(a - b); }
inline double distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

/// int_S f(z) d^2z with n points per axis.
template <class T, class F>
T integrate_cell_fixed(const SystemParams& params, int n, F&& f) {
  const Rule r = gauss_legendre(n);
  const double wx = params.real_period();
  const double wy = params.imag_period();
  T acc{};
  bool first = true;
  for (int i = 0; i < n; ++i) {
    const double x = params.cell_a + 0.5 * wx * (r.nodes[i] + 1.0);
    for (int j = 0; j < n; ++j) {
      const double y = params.cell_b + 0.5 * wy * (r.nodes[j] + 1.0);
      const double w = 0.25 * wx * wy * r.weights[i] * r.weights[j];
      if (first) {
        acc = w * f(std::complex<double>(x, y));
        first = false;
      } else {
        acc += w * f(std::complex<double>(x, y));
      }
    }
  }
  return acc;
}

/// Refines until two successive levels agree to tol; throws QuadratureError
/// if the finest level still disagrees.
template <class T, class F>
T integrate_cell(const SystemParams& params, F&& f, double tol = kCellTol) {
  T prev = integrate_cell_fixed<T>(params, kRefinementLevels[0], f);
  double diff = 0.0;
  for (std::size_t k = 1; k < std::size(kRefinementLevels); ++k) {
    T cur = integrate_cell_fixed<T>(params, kRefinementLevels[k], f);
    diff = distance(cur, prev);
    if (diff <= tol) return cur;
    prev = std::move(cur);
  }
  throw QuadratureError("cell quadrature did not converge: successive levels differ by " + std::to_string(diff));
}

}  // namespace fqa::quadrature

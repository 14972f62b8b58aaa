#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fqa {

/// Dimension d, scale lambda, and the corner (a, b) of the fundamental cell
///   S = [a, a + (2 pi d)^{1/2} lambda) x i [b, b + (2 pi d)^{1/2} / lambda).
struct SystemParams {
  int d = 1;
  double lambda = 1.0;
  double cell_a = 0.0;
  double cell_b = 0.0;

  void validate() const {
    if (d < 1) throw std::invalid_argument("d must be >= 1, got " + std::to_string(d));
    if (!(lambda > 0.0) || !std::isfinite(lambda))
      throw std::invalid_argument("lambda must be positive and finite");
    if (!std::isfinite(cell_a) || !std::isfinite(cell_b))
      throw std::invalid_argument("cell anchor must be finite");
  }

  /// Real period of the analytic representation, (2 pi d)^{1/2} lambda.
  double real_period() const { return std::sqrt(2.0 * std::numbers::pi * d) * lambda; }
  /// Imaginary period (2 pi d)^{1/2} / lambda.
  double imag_period() const { return std::sqrt(2.0 * std::numbers::pi * d) / lambda; }
  std::complex<double> cell_origin() const { return {cell_a, cell_b}; }

  /// Sampling step (2 pi / d)^{1/2} lambda of the position transform.
  double position_step() const { return std::sqrt(2.0 * std::numbers::pi / d) * lambda; }
  /// (2 pi / d)^{1/2} / lambda, the momentum counterpart.
  double momentum_step() const { return std::sqrt(2.0 * std::numbers::pi / d) / lambda; }

  /// Lattice parameter i / (d lambda^2) of the theta basis.
  std::complex<double> basis_tau() const { return {0.0, 1.0 / (d * lambda * lambda)}; }
};

}  // namespace fqa

// Square-integrable wavefunctions on the real line, in the three forms the
// transform accepts: oscillator number states, Gaussian coherent states and
// sampled data on a uniform grid.
#pragma once

#include <complex>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace fqa {

using cx = std::complex<double>;

/// chi(x, N) = (pi^{1/2} 2^N N!)^{-1/2} exp(-x^2/2) H_N(x).
struct HermiteNumber {
  int n = 0;
};

/// psi(x, A) = pi^{-1/4} exp(-x^2/2 + A x - A_R A / 2).
struct GaussianCoherent {
  cx a;
};

/// Values on x0, x0 + h, ..., interpolated with a cubic B-spline and taken
/// as zero outside the grid.
class SampledGrid {
 public:
  SampledGrid(double x0, double spacing, std::vector<cx> values);
  /// Builds from arbitrary (x, value) rows; x must be uniformly spaced.
  static SampledGrid from_samples(const std::vector<double>& x, std::vector<cx> values);

  double x0() const { return x0_; }
  double spacing() const { return h_; }
  double x_end() const { return x0_ + h_ * static_cast<double>(values_.size() - 1); }
  const std::vector<cx>& values() const { return values_; }

  cx at(double x) const;
  /// Trapezoid quadrature of (2 pi)^{-1/2} int psi(x) exp(-i p x) dx over the grid.
  cx fourier(double p) const;

 private:
  struct Splines;
  double x0_;
  double h_;
  std::vector<cx> values_;
  std::shared_ptr<const Splines> splines_;
};

using Wavefunction = std::variant<HermiteNumber, GaussianCoherent, SampledGrid>;

/// Normalized Hermite function, computed by the three-term recurrence on
/// normalized functions so it stays finite for large n.
double hermite_function(int n, double x);

cx evaluate(const Wavefunction& psi, double x);

/// Fourier transform (2 pi)^{-1/2} int psi(x) exp(-i p x) dx.
cx evaluate_fourier(const Wavefunction& psi, double p);

/// |x| beyond which the function (or its transform) is in its decaying tail.
double support_radius(const Wavefunction& psi);
double fourier_support_radius(const Wavefunction& psi);

}  // namespace fqa

#include "fqa/wavefunction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>

namespace fqa {
namespace {

constexpr double kPi = std::numbers::pi;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

struct SampledGrid::Splines {
  boost::math::interpolators::cardinal_cubic_b_spline<double> re;
  boost::math::interpolators::cardinal_cubic_b_spline<double> im;
};

SampledGrid::SampledGrid(double x0, double spacing, std::vector<cx> values)
    : x0_(x0), h_(spacing), values_(std::move(values)) {
  if (values_.size() < 4) throw std::invalid_argument("sampled grid needs at least 4 points");
  if (!(h_ > 0.0) || !std::isfinite(h_) || !std::isfinite(x0_))
    throw std::invalid_argument("sampled grid spacing must be positive and finite");
  std::vector<double> re(values_.size()), im(values_.size());
  for (std::size_t j = 0; j < values_.size(); ++j) {
    if (!std::isfinite(values_[j].real()) || !std::isfinite(values_[j].imag()))
      throw std::invalid_argument("sampled grid contains non-finite values");
    re[j] = values_[j].real();
    im[j] = values_[j].imag();
  }
  using Spline = boost::math::interpolators::cardinal_cubic_b_spline<double>;
  splines_ = std::make_shared<const Splines>(
      Splines{Spline(re.begin(), re.end(), x0_, h_), Spline(im.begin(), im.end(), x0_, h_)});
}

SampledGrid SampledGrid::from_samples(const std::vector<double>& x, std::vector<cx> values) {
  if (x.size() != values.size()) throw std::invalid_argument("x and value columns differ in length");
  if (x.size() < 4) throw std::invalid_argument("sampled grid needs at least 4 points");
  const double h = (x.back() - x.front()) / static_cast<double>(x.size() - 1);
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double expect = x.front() + h * static_cast<double>(j);
    if (std::abs(x[j] - expect) > 1e-9 * std::max(1.0, std::abs(h) * static_cast<double>(x.size())))
      throw std::invalid_argument("sampled grid x values must be uniformly spaced and increasing");
  }
  return SampledGrid(x.front(), h, std::move(values));
}

cx SampledGrid::at(double x) const {
  if (x < x0_ || x > x_end()) return 0.0;
  return {splines_->re(x), splines_->im(x)};
}

cx SampledGrid::fourier(double p) const {
  cx acc = 0.0;
  const std::size_t n = values_.size();
  for (std::size_t j = 0; j < n; ++j) {
    const double x = x0_ + h_ * static_cast<double>(j);
    const double w = (j == 0 || j + 1 == n) ? 0.5 : 1.0;
    acc += w * values_[j] * std::polar(1.0, -p * x);
  }
  return acc * h_ / std::sqrt(2.0 * kPi);
}

double hermite_function(int n, double x) {
  if (n < 0) throw std::invalid_argument("Hermite index must be non-negative");
  double prev = 0.0;
  double cur = std::pow(kPi, -0.25) * std::exp(-0.5 * x * x);
  for (int k = 0; k < n; ++k) {
    const double next = x * std::sqrt(2.0 / (k + 1)) * cur - std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

cx evaluate(const Wavefunction& psi, double x) {
  return std::visit(
      overloaded{
          [x](const HermiteNumber& h) { return cx(hermite_function(h.n, x)); },
          [x](const GaussianCoherent& g) {
            return std::pow(kPi, -0.25) * std::exp(-0.5 * x * x + g.a * x - 0.5 * g.a.real() * g.a);
          },
          [x](const SampledGrid& s) { return s.at(x); },
      },
      psi);
}

cx evaluate_fourier(const Wavefunction& psi, double p) {
  return std::visit(
      overloaded{
          [p](const HermiteNumber& h) {
            // (-i)^N: the transform with kernel exp(-i p x).
            static constexpr cx kPowers[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
            return kPowers[h.n % 4] * hermite_function(h.n, p);
          },
          [p](const GaussianCoherent& g) {
            const cx s = g.a - cx(0.0, p);
            return std::pow(kPi, -0.25) * std::exp(-0.5 * g.a.real() * g.a + 0.5 * s * s);
          },
          [p](const SampledGrid& s) { return s.fourier(p); },
      },
      psi);
}

double support_radius(const Wavefunction& psi) {
  return std::visit(
      overloaded{
          [](const HermiteNumber& h) { return std::sqrt(2.0 * h.n + 1.0) + 1.0; },
          [](const GaussianCoherent& g) { return std::abs(g.a.real()) + 1.0; },
          [](const SampledGrid& s) { return std::max(std::abs(s.x0()), std::abs(s.x_end())); },
      },
      psi);
}

double fourier_support_radius(const Wavefunction& psi) {
  return std::visit(
      overloaded{
          [](const HermiteNumber& h) { return std::sqrt(2.0 * h.n + 1.0) + 1.0; },
          [](const GaussianCoherent& g) { return std::abs(g.a.imag()) + 1.0; },
          [](const SampledGrid&) { return 0.0; },
      },
      psi);
}

}  // namespace fqa

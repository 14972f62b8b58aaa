#include "fqa/theta.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fqa::theta {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr long kMaxTerms = 1'000'000;

void validate(const ThetaInput& in) {
  auto finite = [](cx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); };
  if (!finite(in.u) || !finite(in.tau) || !std::isfinite(in.tol))
    throw std::domain_error("theta: non-finite input");
  if (!(in.tau.imag() > 0.0))
    throw std::domain_error("theta: Im(tau) must be positive");
  if (!(in.tol > 0.0))
    throw std::domain_error("theta: tolerance must be positive");
}

// Sum over n of weight(n+shift) * exp(i pi tau (n+shift)^2 + 2 i (n+shift) u).
// shift = 0 gives theta3, shift = 1/2 gives theta2. With derivative set, each
// term carries the factor 2 i (n+shift).
cx series(const ThetaInput& in, double shift, bool derivative) {
  validate(in);
  const cx i_pi_tau = cx(0.0, kPi) * in.tau;
  const cx two_i_u = cx(0.0, 2.0) * in.u;

  auto term = [&](long n) {
    const double k = static_cast<double>(n) + shift;
    cx t = std::exp(i_pi_tau * (k * k) + two_i_u * k);
    if (derivative) t *= cx(0.0, 2.0 * k);
    return t;
  };

  // Real part of the exponent is maximal at k = -Im(u) / (pi Im(tau)).
  const double peak = -in.u.imag() / (kPi * in.tau.imag());
  const long center = std::lround(peak - shift);

  cx sum = term(center);
  int quiet = 0;
  for (long j = 1; j < kMaxTerms; ++j) {
    const cx hi = term(center + j);
    const cx lo = term(center - j);
    sum += hi + lo;
    const double bound = in.tol * (1.0 + std::abs(sum));
    if (std::abs(hi) < bound && std::abs(lo) < bound) {
      if (++quiet == 3) break;
    } else {
      quiet = 0;
    }
    if (j + 1 == kMaxTerms) throw std::domain_error("theta: series did not converge");
  }
  if (!std::isfinite(sum.real()) || !std::isfinite(sum.imag()))
    throw std::overflow_error("theta: value outside double range");
  return sum;
}

}  // namespace

cx theta3(const ThetaInput& in) { return series(in, 0.0, false); }
cx theta2(const ThetaInput& in) { return series(in, 0.5, false); }
cx theta3_derivative(const ThetaInput& in) { return series(in, 0.0, true); }

}  // namespace fqa::theta

// Jacobi theta functions for complex argument and lattice parameter.
//
//   theta3(u;tau) = sum_n exp(i pi tau n^2 + 2 i n u)
//   theta2(u;tau) = sum_n exp(i pi tau (n+1/2)^2 + i (2n+1) u)
//
// The series are summed outward from the dominant term, so arguments with a
// large imaginary part (as produced by points high in the fundamental cell)
// cost the same as real ones. All functions are pure.
#pragma once

#include <complex>

namespace fqa::theta {

using cx = std::complex<double>;

inline constexpr double kDefaultTol = 1e-14;

struct ThetaInput {
  cx u;
  cx tau;
  double tol = kDefaultTol;
};

/// Throws std::domain_error for Im(tau) <= 0, tol <= 0 or non-finite input,
/// std::overflow_error when the sum leaves the double range.
cx theta3(const ThetaInput& in);
cx theta2(const ThetaInput& in);

/// d/du theta3(u;tau), summed termwise with the same truncation rule.
cx theta3_derivative(const ThetaInput& in);

inline cx theta3(cx u, cx tau) { return theta3(ThetaInput{u, tau}); }
inline cx theta2(cx u, cx tau) { return theta2(ThetaInput{u, tau}); }
inline cx theta3_derivative(cx u, cx tau) { return theta3_derivative(ThetaInput{u, tau}); }

}  // namespace fqa::theta

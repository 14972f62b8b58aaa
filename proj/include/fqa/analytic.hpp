// The analytic representation of a finite state on the fundamental cell:
//
//   f(z) = pi^{-1/4} sum_m Theta3[pi m/d - z/lambda (pi/2d)^{1/2}; i/(d lambda^2)] f_m
//
// f is entire and doubly quasi-periodic with periods (2 pi d)^{1/2} lambda and
// i (2 pi d)^{1/2} / lambda.
#pragma once

#include <complex>

#include "fqa/finite_hilbert.hpp"
#include "fqa/params.hpp"

namespace fqa {

class AnalyticState {
 public:
  AnalyticState(FiniteState state, SystemParams params);

  const FiniteState& state() const { return state_; }
  const SystemParams& params() const { return params_; }
  int dim() const { return params_.d; }

 private:
  FiniteState state_;
  SystemParams params_;
};

/// Theta3[pi m/d - z/lambda (pi/2d)^{1/2}; i/(d lambda^2)], the image of |X;m>> up to pi^{-1/4}.
cx basis_theta(long m, cx z, const SystemParams& params);
/// d/dz of basis_theta.
cx basis_theta_derivative(long m, cx z, const SystemParams& params);

cx eval_f(const AnalyticState& s, cx z);
cx eval_f_derivative(const AnalyticState& s, cx z);

/// The same value through N_C(z)^{1/2} d^{1/2} lambda exp(-i z_I z/2) <<z*|f>>,
/// with |z*>> built by the direct lattice sum of the displaced Gaussian.
cx eval_f_from_overlap(const AnalyticState& s, cx z);

/// Closed form of the momentum state |P;m>>:
///   lambda pi^{-1/4} exp(-z^2/2) Theta3[pi m/d - lambda z i (pi/2d)^{1/2}; i lambda^2/d].
cx eval_momentum_form(long m, const SystemParams& params, cx z);

/// Closed forms of the coherent state |A>>. The general form is valid for odd
/// d, the product form for even d; eval_coherent_form dispatches on parity.
cx eval_coherent_form_general(cx a, const SystemParams& params, cx z);
cx eval_coherent_form_even(cx a, const SystemParams& params, cx z);
cx eval_coherent_form(cx a, const SystemParams& params, cx z);

/// <<f*|g>> = (2 pi)^{-1/2} d^{-3/2} lambda^{-1} int_S exp(-z_I^2) f(z) g(z*) d^2z,
/// which equals the bilinear sum_m f_m g_m.
cx scalar_product(const AnalyticState& f, const AnalyticState& g);

/// Analytic image of D(alpha, beta)|f>> in closed form (argument shift of the
/// theta basis), with the phase convention of displacement().
cx displaced_f(const AnalyticState& s, PhasePoint p, cx z);

struct OperatorKernel {
  FiniteOperator op;
  SystemParams params;
};

/// Omega(z, zeta*) = pi^{-1/2} d^{-1} sum Omega_mn Theta_m(z) Theta_n(zeta*).
cx kernel_eval(const OperatorKernel& k, cx z, cx zeta_star);

/// (2 pi d)^{-1/2} lambda^{-1} int_S exp(-zeta_I^2) Omega(z, zeta*) f(zeta) d^2zeta.
cx kernel_apply(const OperatorKernel& k, const AnalyticState& f, cx z);

/// d^{-1} sum W(-alpha,-beta) [D(alpha,beta) f](z) from a Weyl table.
cx apply_weyl_expansion_analytic(const WeylTable& table, const AnalyticState& f, cx z);

/// lambda (2 pi d)^{-1/2} int_S N_C(A) |A>><<A| d^2A by cell quadrature.
FiniteOperator coherent_resolution_quadrature(const SystemParams& params);

}  // namespace fqa

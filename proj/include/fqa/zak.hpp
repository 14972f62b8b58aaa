// The transform from real-line wavefunctions to Z_d states and the state
// families built on it.
//
//   psi_m(s1, s2) = N^{-1/2} sum_w exp(-2 pi i s1 w) psi[(2 pi/d)^{1/2} lambda (m + s2 + d w)]
//
// Sector (0, 0) is the periodic transform used everywhere else; number
// states are images of Hermite functions at lambda = 1 and coherent states
// images of displaced Gaussians, which also have a closed theta form.
#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "fqa/finite_hilbert.hpp"
#include "fqa/params.hpp"
#include "fqa/wavefunction.hpp"

namespace fqa {

/// Convergence or coverage failure of a transform.
class ZakError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Twist parameters (sigma1, sigma2), each reduced into [0, 1).
struct ZakSector {
  double sigma1 = 0.0;
  double sigma2 = 0.0;

  static ZakSector reduced(double s1, double s2);
};

/// A normalized image together with N = sum_m |unnormalized psi_m|^2.
struct ZakImage {
  FiniteState state;
  double normalization;
};

inline constexpr int kMaxZakShell = 64;

/// Unnormalized sum for any integer m (no reduction modulo d), so the twisted
/// periodicity psi_{m+d} = exp(2 pi i s1) psi_m can be observed directly.
cx zak_component_raw(const Wavefunction& psi, const SystemParams& params, ZakSector sector, long m);

ZakImage zak_transform(const Wavefunction& psi, const SystemParams& params, ZakSector sector = {});
FiniteState zak_map(const Wavefunction& psi, const SystemParams& params, ZakSector sector = {});

/// Same construction on the real-line Fourier transform, sampled at
/// (2 pi/d)^{1/2} lambda^{-1} (m + d w). The result equals <<P;m|psi>>.
ZakImage momentum_zak_transform(const Wavefunction& psi, const SystemParams& params);
FiniteState momentum_zak_map(const Wavefunction& psi, const SystemParams& params);

/// Image of the N-th Hermite function; requires lambda == 1. Throws ZakError
/// when the image vanishes identically (d = 4 with N = 3 mod 4, for instance).
FiniteState number_state(int n, const SystemParams& params);

/// N_C(A)^{1/2} psi_m(A) from the theta form
///   pi^{-1/4} d^{-1/2} lambda^{-1} exp(i A_I A / 2) Theta3[pi m/d - A/lambda (pi/2d)^{1/2}; i/(d lambda^2)].
std::vector<cx> coherent_amplitudes_raw(cx a, const SystemParams& params);

/// Closed theta expression for N_C(A) = sum_m |N_C^{1/2} psi_m(A)|^2. Odd d uses
/// the Theta3 Theta3 + Theta2 Theta2 form, even d the single product form.
double coherent_normalization(cx a, const SystemParams& params);

FiniteState coherent_state_closed(cx a, const SystemParams& params);

/// <<A1|A2>> via Theta3 Theta3 + Theta2 Theta2. Valid for odd d.
cx coherent_overlap_general(cx a1, cx a2, const SystemParams& params);
/// <<A1|A2>> via the single Theta3 Theta3 product. Valid for even d.
cx coherent_overlap_even(cx a1, cx a2, const SystemParams& params);
/// Dispatches on the parity of d.
cx coherent_overlap(cx a1, cx a2, const SystemParams& params);

/// Partial sum through n_max of
///   |A>> = exp(-|A|^2/4) sum_N (A/sqrt2)^N / sqrt(N!) [N_n(N)/N_C(A)]^{1/2} |N>>,
/// returned without renormalization. Requires lambda == 1.
FiniteState coherent_from_number(cx a, const SystemParams& params, int n_max);

/// Images psi_m(s1_k, s2) on the uniform grid s1_k = k/K, k = 0..K-1.
struct ZakFamily {
  SystemParams params;
  double sigma2 = 0.0;
  std::vector<ZakImage> members;
};

ZakFamily build_zak_family(const Wavefunction& psi, const SystemParams& params, double sigma2, int grid_points);

/// Recovers psi at x = (2 pi/d)^{1/2} lambda (m + s2 + d w) by trapezoid
/// quadrature over s1. The error is estimated against the half grid; a
/// larger estimate than tol throws ZakError.
cx inverse_zak(const ZakFamily& family, long m, long w, double tol = 1e-8);

/// Sample position (2 pi/d)^{1/2} lambda (m + s2 + d w).
double zak_sample_point(const SystemParams& params, double sigma2, long m, long w);

}  // namespace fqa
